use std::path::PathBuf;

use ftlat::{load_schedule, parse_schedule, print_schedule, Mode, APPENDIX_PREP0};
use ftlat_core::exrec::build_cnot_exrec;
use ftlat_core::lattice::{appendix_prep0, builtin, one_rec, validate, BUILTIN_NAMES};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.sched"))
}

#[test]
fn shipped_files_are_the_printed_builtins() {
    for name in BUILTIN_NAMES {
        let text = std::fs::read_to_string(data(name)).unwrap();
        assert_eq!(text, print_schedule(&builtin(name).unwrap()), "{name}");
    }
    let text = std::fs::read_to_string(data(APPENDIX_PREP0)).unwrap();
    assert_eq!(text, print_schedule(&appendix_prep0()));
}

#[test]
fn parse_inverts_print() {
    let mut all: Vec<_> = BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap()).collect();
    all.push(appendix_prep0());
    for g in ["cnot", "swap", "prep0", "prep_plus", "meas"] {
        all.push(one_rec(g).unwrap());
    }
    all.push(build_cnot_exrec().schedule);
    for s in all {
        let text = print_schedule(&s);
        let back = parse_schedule(&text, Mode::Strict).unwrap();
        assert_eq!(back, s, "{}", s.name);
        assert_eq!(print_schedule(&back), text);
        assert_eq!(back.latency(), s.latency());
    }
}

#[test]
fn shipped_files_load_and_validate() {
    for name in BUILTIN_NAMES.iter().copied().chain([APPENDIX_PREP0]) {
        let path = data(name);
        let s = load_schedule(path.to_str().unwrap(), Mode::Strict).unwrap();
        assert!(validate(&s).ok, "{name}");
        assert_eq!(s, load_schedule(&format!("builtin:{name}"), Mode::Strict).unwrap());
    }
    assert!(load_schedule("no/such/file.sched", Mode::Strict).is_err());
    assert!(load_schedule("builtin:nope", Mode::Strict).is_err());
}

#[test]
fn lenient_parse_leaves_adjacency_to_validation() {
    let mut text = print_schedule(&builtin("ec").unwrap());
    text = text.replacen("CNOT 1 4 1 3", "CNOT 1 4 2 3", 1);
    assert!(parse_schedule(&text, Mode::Strict).is_err());
    let s = parse_schedule(&text, Mode::Lenient).unwrap();
    let r = validate(&s);
    assert!(!r.ok);
    assert!(r.has(ftlat_core::lattice::Rule::Adjacency));
}
