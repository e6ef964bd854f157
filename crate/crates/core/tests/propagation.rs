use ftlat_core::exrec::LocationType;
use ftlat_core::lattice::{builtin, Label, OpKind, Tracker, BUILTIN_NAMES};
use ftlat_core::propagation::{apply_frame_correction, extract_syndrome, propagate, Fault, FaultEvent, Propagator};
use ftlat_core::{CodeDefinition, LogicalClass, Pauli, PauliString};

fn flipped_labels(p: &Propagator, flips: &[bool]) -> Vec<Label> {
    p.measurements().iter().zip(flips).filter(|(_, &f)| f).map(|(m, _)| m.1).collect()
}

#[test]
fn clean_runs_are_trivial() {
    for name in BUILTIN_NAMES {
        let s = builtin(name).unwrap();
        let r = propagate(&s, &[]).unwrap();
        assert!(r.residual.is_identity(), "{name}");
        assert!(r.flips.iter().all(|f| !f), "{name}");
    }
    let ec = builtin("ec").unwrap();
    assert!(extract_syndrome(&ec, &propagate(&ec, &[]).unwrap()).unwrap().is_trivial());
}

#[test]
fn memory_x_on_d1_reports_its_column() {
    let code = CodeDefinition::bacon_shor();
    let ec = builtin("ec").unwrap();
    let p = Propagator::new(&ec).unwrap();
    let loc = p
        .locations()
        .iter()
        .find(|l| l.loc_type == LocationType::Memory && l.step == 0 && l.sites.0 == ec.home_of(Label::Data(1)).unwrap())
        .unwrap();
    let r = p.run(&[FaultEvent { location: loc.id, fault: Fault::One(Pauli::X) }]).unwrap();
    let want = code.syndrome_of(&PauliString::parse(9, "X1").unwrap()).unwrap();
    assert_eq!(p.extract_syndromes(&r).unwrap(), vec![want]);
    let s3 = &ec.syndrome_map[2].labels;
    let flipped = flipped_labels(&p, &r.flips);
    assert!(!flipped.is_empty());
    assert!(flipped.iter().all(|l| s3.contains(l)), "{flipped:?}");
}

#[test]
fn x_on_a_data_control_copies_to_the_ancilla() {
    let ec = builtin("ec").unwrap();
    let p = Propagator::new(&ec).unwrap();
    let homes: Vec<_> = ec.data_home.iter().map(|h| h.1).collect();
    // Faults act after their gate, so the X is placed on the idle step just
    // before a data-controlled CNOT.
    let locs = p.locations();
    let (cnot, idle) = locs
        .iter()
        .filter(|l| l.loc_type == LocationType::Cnot && homes.contains(&l.sites.0) && l.step > 0)
        .find_map(|c| {
            locs.iter()
                .find(|m| m.loc_type == LocationType::Memory && m.step + 1 == c.step && m.sites.0 == c.sites.0)
                .map(|m| (c, m))
        })
        .unwrap();
    let r = p.run(&[FaultEvent { location: idle.id, fault: Fault::One(Pauli::X) }]).unwrap();
    let target = Tracker::run(&ec).states[cnot.step].get(cnot.sites.1.unwrap()).unwrap();
    assert!(flipped_labels(&p, &r.flips).contains(&target));
    assert_eq!(r.residual.weight(), 1);
    assert_eq!(r.residual.get(homes.iter().position(|&h| h == cnot.sites.0).unwrap()), Pauli::X);
    let kinds: Vec<OpKind> = p.measurements().iter().zip(&r.flips).filter(|(_, &f)| f).map(|(m, _)| m.2).collect();
    assert!(kinds.iter().all(|&k| k == OpKind::MeasZ), "{kinds:?}");
}

#[test]
fn frame_correction_examples() {
    let code = CodeDefinition::bacon_shor();
    let ec = builtin("ec").unwrap();
    let p = Propagator::new(&ec).unwrap();
    let clean = p.run(&[]).unwrap();
    assert!(apply_frame_correction(&ec, &clean, &code).unwrap().is_identity());
    let class = |lit: &str| {
        let r = p.run_from(&PauliString::parse(9, lit).unwrap(), &[]).unwrap();
        code.logical_class(&apply_frame_correction(&ec, &r, &code).unwrap()).unwrap()
    };
    assert_eq!(class("X7"), LogicalClass::I);
    assert_eq!(class("X1.X2.X3"), LogicalClass::X);
    assert_eq!(class("X1.X4"), LogicalClass::I);
}

#[test]
fn faults_must_fit_their_location() {
    let ec = builtin("ec").unwrap();
    let p = Propagator::new(&ec).unwrap();
    let n = p.locations().len();
    assert!(p.run(&[FaultEvent { location: n, fault: Fault::Flip }]).is_err());
    let mem = p.locations().iter().find(|l| l.loc_type == LocationType::Memory).unwrap().id;
    assert!(p.run(&[FaultEvent { location: mem, fault: Fault::Flip }]).is_err());
    assert!(p.run(&[FaultEvent { location: mem, fault: Fault::Two(Pauli::X, Pauli::X) }]).is_err());
}
