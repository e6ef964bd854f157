use ftlat_core::code::{decode_bits, syndrome_bits};
use ftlat_core::{CodeDefinition, LogicalClass, PauliString};
use proptest::prelude::*;

fn pauli9() -> impl Strategy<Value = PauliString> {
    (0u64..512, 0u64..512).prop_map(|(x, z)| PauliString::from_bits(9, x, z))
}

proptest! {
    #[test]
    fn products_are_associative_and_self_inverse(a in pauli9(), b in pauli9(), c in pauli9()) {
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.multiply(&a).unwrap().is_identity());
    }

    #[test]
    fn commutation_is_symmetric_and_bilinear(a in pauli9(), b in pauli9(), c in pauli9()) {
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        let bc = b.multiply(&c).unwrap();
        let lhs = a.commutes(&bc).unwrap();
        let rhs = a.commutes(&b).unwrap() == a.commutes(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn literal_round_trip(a in pauli9()) {
        let text = a.to_string();
        prop_assert_eq!(PauliString::parse(9, &text).unwrap(), a.clone());
        prop_assert_eq!(a.weight(), a.support().len());
    }

    #[test]
    fn syndrome_is_linear(a in pauli9(), b in pauli9()) {
        let code = CodeDefinition::bacon_shor();
        let ab = a.multiply(&b).unwrap();
        let s = code.syndrome_of(&ab).unwrap().bits();
        prop_assert_eq!(s, code.syndrome_of(&a).unwrap().bits() ^ code.syndrome_of(&b).unwrap().bits());
        prop_assert_eq!(syndrome_bits(ab.x_bits(), ab.z_bits()).bits(), s);
    }

    #[test]
    fn decoding_clears_the_syndrome(a in pauli9()) {
        let code = CodeDefinition::bacon_shor();
        let s = code.syndrome_of(&a).unwrap();
        let r = a.multiply(&code.decode(s)).unwrap();
        prop_assert!(code.syndrome_of(&r).unwrap().is_trivial());
        let (x, z) = decode_bits(s);
        prop_assert_eq!(code.decode(s), PauliString::from_bits(9, x, z));
    }

    #[test]
    fn gauge_elements_never_change_the_class(a in pauli9(), mask in 0u32..(1 << 12)) {
        let code = CodeDefinition::bacon_shor();
        let mut g = PauliString::identity(9);
        for (k, gen) in code.gauge_generators.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g = g.multiply(gen).unwrap();
            }
        }
        prop_assert!(code.in_gauge_group(&g).unwrap());
        let s = code.syndrome_of(&a).unwrap();
        let r = a.multiply(&code.decode(s)).unwrap();
        let rg = r.multiply(&g).unwrap();
        prop_assert_eq!(code.logical_class(&r).unwrap(), code.logical_class(&rg).unwrap());
    }

    #[test]
    fn weight_one_errors_decode_to_identity(q in 0usize..9, p in 1u8..4) {
        let code = CodeDefinition::bacon_shor();
        let e = PauliString::single(9, q, ftlat_core::Pauli::from_bits(p & 1 == 1, p & 2 == 2));
        let r = e.multiply(&code.decode(code.syndrome_of(&e).unwrap())).unwrap();
        prop_assert_eq!(code.logical_class(&r).unwrap(), LogicalClass::I);
    }
}
