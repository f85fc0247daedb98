use strobj::oracle::{check_galois, check_lattice_laws, check_soundness, SoundOp};

fn trials(default: usize) -> usize {
    std::env::var("STROBJ_TRIALS").ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

#[test]
fn operations_are_sound() {
    for op in SoundOp::ALL {
        let out = check_soundness(op, trials(100), 11, 6);
        assert!(out.passed(), "{out}");
    }
}

#[test]
fn lattice_laws_hold() {
    let out = check_lattice_laws(trials(200), 12);
    assert!(out.passed(), "{out}");
}

#[test]
fn galois_and_atoms() {
    let out = check_galois(trials(200), 13, 6);
    assert!(out.passed(), "{out}");
}
