use super::*;
use crate::braided::qplane::build_q_fermionic_plane;
use crate::error::Error;
use crate::scalars::RatFunc;
use crate::testdata;

fn same_tensors(a: &crate::hopf::HopfAlgebraData, b: &crate::hopf::HopfAlgebraData) {
    assert_eq!(a.dim, b.dim);
    assert_eq!(a.mult, b.mult);
    assert_eq!(a.unit, b.unit);
    assert_eq!(a.comult, b.comult);
    assert_eq!(a.counit, b.counit);
    assert_eq!(a.antipode, b.antipode);
}

#[test]
fn compiled_dqs_matches_direct_construction() {
    let c = compile(&builtin("dqs", None).unwrap()).unwrap();
    same_tensors(&c.hopf, &testdata::dqs());
    assert_eq!(c.hopf.labels, testdata::dqs().labels);
    assert!(c.warnings.is_empty());
    assert!(c.braided.is_none());
}

#[test]
fn compiled_cyclic_matches_direct_construction() {
    for n in 2..=6 {
        let c = compile(&builtin("cyclic-group", Some(n)).unwrap()).unwrap();
        same_tensors(&c.hopf, &testdata::cyclic_group(n));
    }
}

#[test]
fn compiled_fermionic_line_matches_direct_construction() {
    let c = compile(&builtin("fermionic-line", None).unwrap()).unwrap();
    let (a, h, cross) = testdata::fermionic_line_parts();
    same_tensors(&c.hopf, &a);
    same_tensors(c.dual.as_ref().unwrap(), &h);
    let s = c.smash.as_ref().unwrap();
    assert_eq!(s.cross, cross);
    let b = c.braided.as_ref().unwrap();
    assert!(b.braiding.psi[1][1][1][1] == RatFunc::from_int(-1));
}

#[test]
fn compiled_qplane_matches_builder() {
    let c = compile(&builtin("q-plane", Some(2)).unwrap()).unwrap();
    let (pair, smash) = build_q_fermionic_plane(2).unwrap();
    same_tensors(&c.hopf, &pair.a.base);
    same_tensors(c.dual.as_ref().unwrap(), &pair.h.base);
    assert_eq!(c.braided.as_ref().unwrap().braiding.psi, pair.a.braiding.psi);
    assert_eq!(
        c.dual_braided.as_ref().unwrap().braiding.psi,
        pair.h.braiding.psi
    );
    let s = c.smash.as_ref().unwrap();
    assert_eq!(s.cross, smash.cross);
    assert_eq!(s.pairing, smash.pairing);
}

#[test]
fn all_builtins_compile_cleanly() {
    let cases: &[(&str, Option<usize>)] = &[
        ("cyclic-group", Some(2)),
        ("cyclic-group", Some(5)),
        ("dqs", None),
        ("dqs-dual", None),
        ("fermionic-line", None),
        ("q-plane", Some(1)),
        ("q-plane", Some(2)),
    ];
    for (name, p) in cases {
        let c = compile(&builtin(name, *p).unwrap()).unwrap();
        assert!(c.warnings.is_empty(), "{name}: {:?}", c.warnings);
    }
}

#[test]
fn parse_emit_parse_is_idempotent() {
    let cases: &[(&str, Option<usize>)] = &[
        ("cyclic-group", Some(4)),
        ("dqs", None),
        ("dqs-dual", None),
        ("fermionic-line", None),
        ("q-plane", Some(2)),
    ];
    for (name, p) in cases {
        let ast = builtin(name, *p).unwrap();
        let text = emit_source(&ast);
        let reparsed = parse(&text).unwrap();
        assert_eq!(reparsed, ast, "{name} canonical form drifts");
        assert_eq!(emit_source(&reparsed), text, "{name} emission drifts");
    }
}

#[test]
fn emitted_dqs_dual_has_expected_relations() {
    let src = builtin_source("dqs-dual", None).unwrap();
    assert!(src.contains("a^2 = 0"), "{src}");
    assert!(src.contains("b*a = -2*a - a*b"), "{src}");
    assert!(src.contains("b^2 = -2*b"), "{src}");
}

#[test]
fn emit_round_trips_through_compile() {
    let c = compile(&builtin("dqs", None).unwrap()).unwrap();
    let text = emit(&c.hopf).unwrap();
    let again = compile(&parse(&text).unwrap()).unwrap();
    same_tensors(&again.hopf, &c.hopf);
}

#[test]
fn self_referential_relation_exhausts_budget() {
    let src = "algebra loop\ngenerators x\nrelations\n  x*x = x*x\nbasis 1 x\n\
               coproduct\n  x -> x(*)1 + 1(*)x\ncounit\n  x -> 0\nantipode\n  x -> -x\n";
    match compile(&parse(src).unwrap()) {
        Err(Error::NonTerminatingRewrite { budget, .. }) => {
            assert_eq!(budget, REWRITE_BUDGET)
        }
        other => panic!("expected NonTerminatingRewrite, got {other:?}"),
    }
}

#[test]
fn unknown_symbol_is_reported() {
    let src = "algebra bad\ngenerators x\nrelations\n  x*z = 0\nbasis 1 x\n\
               coproduct\n  x -> x(*)1 + 1(*)x\ncounit\n  x -> 0\nantipode\n  x -> -x\n";
    match parse(src) {
        Err(Error::UnknownSymbol(s)) => assert_eq!(s, "z"),
        other => panic!("expected UnknownSymbol, got {other:?}"),
    }
}

#[test]
fn duplicate_generator_is_reported() {
    let src = "algebra bad\ngenerators x x\nbasis 1 x\n";
    match parse(src) {
        Err(Error::DuplicateGenerator(s)) => assert_eq!(s, "x"),
        other => panic!("expected DuplicateGenerator, got {other:?}"),
    }
}

#[test]
fn syntax_error_carries_position() {
    match parse("algebra t\ngenerators x\nbasis 1 x\ncoproduct\n  x -> x(*)\n") {
        Err(Error::SyntaxError { line, .. }) => assert_eq!(line, 5),
        other => panic!("expected SyntaxError, got {other:?}"),
    }
}

#[test]
fn unknown_builtin_and_bad_param() {
    assert!(matches!(
        builtin("heisenberg", None),
        Err(Error::UnknownBuiltin(_))
    ));
    assert!(matches!(builtin("cyclic-group", None), Err(Error::BadParam(_))));
    assert!(matches!(builtin("cyclic-group", Some(0)), Err(Error::BadParam(_))));
    assert!(matches!(builtin("dqs", Some(3)), Err(Error::BadParam(_))));
}

#[test]
fn word_label_collapses_powers() {
    let gens = vec!["x".to_string(), "y".to_string()];
    assert_eq!(word_label(&[], &gens), "1");
    assert_eq!(word_label(&[0], &gens), "x");
    assert_eq!(word_label(&[0, 0, 1], &gens), "x^2*y");
    assert_eq!(word_label(&[0, 1, 1, 0], &gens), "x*y^2*x");
}
