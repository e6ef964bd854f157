use ftlat::sweep::sweep;
use ftlat_core::exrec::{build_cnot_exrec, Engine};

#[test]
fn parallel_sweep_matches_the_serial_matrix() {
    let x = build_cnot_exrec();
    let e = Engine::new(&x).unwrap();
    let serial = e.malignant_matrix();
    for jobs in [1, 2, 5, 8] {
        let calls = std::sync::atomic::AtomicUsize::new(0);
        let m = sweep(&e, jobs, |done, total| {
            assert!(done <= total);
            calls.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(m, serial, "{jobs} workers");
        assert!(calls.into_inner() > 0);
    }
}
