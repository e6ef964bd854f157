use ftlat_core::{CodeDefinition, LogicalClass, Pauli, PauliString};

fn weight_one() -> Vec<PauliString> {
    (0..9).flat_map(|q| Pauli::NONTRIVIAL.map(|p| PauliString::single(9, q, p))).collect()
}

#[test]
fn group_relations_hold_exhaustively() {
    let code = CodeDefinition::bacon_shor();
    let s = &code.stabilizer_generators;
    for a in s {
        for b in s {
            assert!(a.commutes(b).unwrap());
        }
        for g in &code.gauge_generators {
            assert!(a.commutes(g).unwrap());
        }
        assert!(a.commutes(&code.logical_x).unwrap() && a.commutes(&code.logical_z).unwrap());
    }
    for g in &code.gauge_generators {
        assert!(g.commutes(&code.logical_x).unwrap() && g.commutes(&code.logical_z).unwrap());
    }
    assert!(!code.logical_x.commutes(&code.logical_z).unwrap());
}

#[test]
fn distance_is_three() {
    let code = CodeDefinition::bacon_shor();
    let mut errors = vec![PauliString::identity(9)];
    errors.extend(weight_one());
    for i in 0..9 {
        for j in 0..i {
            for p in Pauli::NONTRIVIAL {
                for q in Pauli::NONTRIVIAL {
                    let mut e = PauliString::single(9, i, p);
                    e.set(j, q);
                    errors.push(e);
                }
            }
        }
    }
    assert_eq!(errors.len(), 1 + 27 + 324);
    for e in &errors {
        if code.syndrome_of(e).unwrap().is_trivial() {
            assert_eq!(code.logical_class(e).unwrap(), LogicalClass::I, "{e}");
        }
    }
    let xl = PauliString::parse(9, "X1.X2.X3").unwrap();
    assert!(code.syndrome_of(&xl).unwrap().is_trivial());
    assert_eq!(code.logical_class(&xl).unwrap(), LogicalClass::X);
}

#[test]
fn gauge_is_absorbed_by_the_decoder() {
    let code = CodeDefinition::bacon_shor();
    for g in &code.gauge_generators {
        for e in weight_one() {
            let eg = e.multiply(g).unwrap();
            let r = eg.multiply(&code.decode(code.syndrome_of(&eg).unwrap())).unwrap();
            assert_eq!(code.logical_class(&r).unwrap(), LogicalClass::I, "{e} * {g}");
        }
    }
    // Same-column X pairs and same-row Z pairs are trivial errors.
    for lit in ["X1.X4", "X4.X7", "X2.X8", "Z1.Z2", "Z5.Z6", "Z7.Z9"] {
        let e = PauliString::parse(9, lit).unwrap();
        assert!(code.syndrome_of(&e).unwrap().is_trivial());
        assert_eq!(code.logical_class(&e).unwrap(), LogicalClass::I, "{lit}");
    }
}

#[test]
fn syndrome_sign_examples() {
    let code = CodeDefinition::bacon_shor();
    let s = |lit: &str| code.syndrome_of(&PauliString::parse(9, lit).unwrap()).unwrap().signs();
    assert_eq!(s("X1"), [1, 1, -1, 1]);
    assert_eq!(s("Z5"), [-1, -1, 1, 1]);
    assert_eq!(s("Y9"), [1, -1, 1, -1]);
}
