use std::path::PathBuf;

use strobj::config::PropertyConfig;
use strobj::interp::{analyze_program, parse_program, session_ctx, AnalysisReport, Options, Verdict};
use strobj::object::Ctx;
use strobj::property::UnaryInterval;
use strobj::word::word;

fn programs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

fn run(file: &str, config: Option<&str>) -> (AnalysisReport, Ctx) {
    let src = std::fs::read_to_string(programs_dir().join(file)).unwrap();
    let p = parse_program(&src).unwrap();
    let cfg = match config {
        Some(c) => PropertyConfig::load(&programs_dir().join(c)).unwrap(),
        None => PropertyConfig::default(),
    };
    let ctx = session_ctx(&p, &cfg, None).unwrap();
    (analyze_program(&p, &ctx, &Options::default()).unwrap(), ctx)
}

#[test]
fn tag_guard_error_branch_is_dead() {
    let (r, _) = run("tag_guard.sjs", None);
    assert!(r.is_unreachable(6));
    assert!(!r.is_unreachable(7));
    assert_eq!(r.var_at(1, "y").unwrap().length, UnaryInterval::new(true, 5, None));
    let z = r.var_at(4, "z").unwrap();
    assert_eq!(z.length, UnaryInterval::exact(1));
    assert_eq!(z.constant(), Some(word(">")));
    assert_eq!(r.var_at(2, "z").unwrap().constant(), Some(word("?")));
    let exit = r.returned.as_ref().unwrap();
    assert_eq!(exit.length, UnaryInterval::exact(1));
    assert!(r.verdicts.contains(&Verdict::ProvenNonEmpty("z".into(), 7)));
}

#[test]
fn tag_guard_refines_y_inside_branch() {
    let src = std::fs::read_to_string(programs_dir().join("tag_guard.sjs")).unwrap();
    let src = src.replace("z = y.charAt(4); }", "z = y.charAt(4); y = y; }");
    let p = parse_program(&src).unwrap();
    let ctx = session_ctx(&p, &PropertyConfig::default(), None).unwrap();
    let r = analyze_program(&p, &ctx, &Options::default()).unwrap();
    assert_eq!(r.var_at(4, "y").unwrap().length, UnaryInterval::new(false, 5, None));
}

#[test]
fn nested_tags_index_guard_is_dead() {
    let (r, ctx) = run("nested_tags.sjs", Some("tags.json"));
    assert!(r.is_unreachable(7));
    let z = r.var_at(5, "z").unwrap();
    assert_eq!(z.bound().suffix, Some(word("</fstTag>")));
    assert_eq!(z.length, UnaryInterval::new(false, 16, None));
    let tag = z.component(&ctx.props[0], &ctx);
    let b = tag.bound().unwrap();
    assert_eq!(b.prefix, Some(word(">")));
    assert_eq!(b.suffix, Some(word(">")));
    let z1 = r.var_at(1, "z").unwrap();
    assert_eq!(z1.bound().prefix, Some(word("<fstTag>")));
    assert_eq!(z1.length, UnaryInterval::new(false, 17, None));
    let w = r.var_at(4, "w").unwrap();
    assert_eq!(w.length, UnaryInterval::new(false, 8, Some(12)));
    assert_eq!(w.bound().prefix, Some(word("<")));
    assert_eq!(w.bound().suffix, Some(word("Tag>")));
}

#[test]
fn nested_tags_without_property_keeps_guard() {
    let (r, _) = run("nested_tags.sjs", None);
    assert!(!r.is_unreachable(7));
}

#[test]
fn sanitizer_trace_until_loop() {
    let (r, _) = run("sanitizer.sjs", None);
    let z3 = r.var_at(3, "z").unwrap();
    assert_eq!(z3.bound().prefix, Some(word("a")));
    assert_eq!(z3.bound().suffix, Some(word("ab")));
    assert_eq!(z3.length, UnaryInterval::new(false, 3, None));
    let z4 = r.var_at(4, "z").unwrap();
    assert_eq!(z4.bound().prefix, Some(word("aa")));
    assert_eq!(z4.bound().suffix, Some(word("ab")));
    assert_eq!(z4.length, UnaryInterval::new(false, 3, None));
}

#[test]
fn sanitizer_loop_verdict() {
    let (r, _) = run("sanitizer.sjs", None);
    assert!(!r.verdicts.contains(&Verdict::LoopExitUnreachable(5)));
    assert!(r.exit.as_ref().unwrap().reachable);
    let z6 = r.var_at(6, "z").unwrap();
    assert!(z6.bound().factors.contains(&word("a_b")));
    assert_eq!(z6.length, UnaryInterval::new(false, 4, None));
}
