use eqpres::equivariant::Origin;
use eqpres::io::{builtin, format_word, parse_word};
use eqpres::{EquivariantPresentation, Error, GammaSet, GeneratorOrbit, Letter, Mode, PermGroup, Permutation, SymbolRef};

fn example(name: &str, n: usize) -> EquivariantPresentation {
    builtin(name, n).unwrap().to_equivariant().unwrap()
}

#[test]
fn expansion_of_the_smallest_example() {
    let ep = example("z2sum", 2);
    let exp = ep.expand_r().unwrap();
    let gs = ep.gamma_set();
    let mut words: Vec<String> = exp.presentation.relators().iter().map(|w| format_word(w, gs)).collect();
    words.sort();
    assert_eq!(
        words,
        ["s.0 s.1 s.0^-1 s.1^-1", "s.0^2", "s.1 s.0 s.1^-1 s.0^-1", "s.1^2"]
    );
    assert_eq!(exp.provenance.len(), 4);
    assert!(exp.provenance.iter().all(|o| matches!(o, Origin::Orbit { .. })));
}

#[test]
fn expansion_is_gamma_closed() {
    for (name, n) in [("z2sum", 3), ("z2sum", 4), ("star", 3), ("hyperoct", 3)] {
        let ep = example(name, n);
        let table = ep.tabulate().unwrap();
        let exp = ep.expand_r_with(&table).unwrap();
        let rels = exp.presentation.relators();
        for g in ep.gamma_set().gamma().generators() {
            let k = table.element_index(g).unwrap();
            for r in rels {
                assert!(rels.contains(&table.act_word(k, r)), "{name} {n}");
            }
        }
    }
}

#[test]
fn degenerate_expansions() {
    let ep = example("z2sum", 3);
    let empty = EquivariantPresentation::finite(ep.gamma_set().clone(), vec![]).unwrap();
    assert!(empty.expand_r().unwrap().presentation.relators().is_empty());
    let triv = ep.trivialized().unwrap();
    let exp = triv.expand_r().unwrap();
    assert_eq!(exp.presentation.relators(), triv.r0());
}

#[test]
fn conjugation_relators() {
    let ep = example("hyperoct", 3);
    let conj = ep.r_conj().unwrap();
    assert!(conj.len() <= 9);
    let s = |p| SymbolRef::new(0, p);
    let c01 = conj.iter().find(|c| c.s == s(0) && c.t == s(1)).unwrap();
    assert_eq!(
        c01.word.letters(),
        &[Letter::pos(s(0)), Letter::pos(s(1)), Letter::neg(s(0)), Letter::neg(s(1))]
    );
    assert!(conj.iter().all(|c| c.s != c.t));
    assert_eq!(example("z2sum", 2).r_conj().unwrap_err(), Error::ModeMismatch { expected: "weak" });
}

#[test]
fn validation_of_examples() {
    for (name, n, order) in [("z2sum", 2, 4), ("z2sum", 3, 8), ("z2sum", 4, 16), ("hyperoct", 2, 4), ("hyperoct", 3, 8)] {
        let r = example(name, n).validate(100_000).unwrap();
        assert!(r.passed(), "{name} {n}: {:?}", r.checks);
        assert_eq!(r.realized_order, order);
    }
    let r = example("hyperoct", 3).validate(100_000).unwrap();
    assert_eq!(r.mode, Mode::Weak);
    for name in ["iota_in_gamma", "iota_equivariant", "iota_normal", "iota_realization_agrees"] {
        assert!(r.checks.iter().any(|c| c.name == name && c.passed), "{name}");
    }
}

#[test]
fn star_examples_as_enumerated() {
    let r = example("star", 3).validate(100_000).unwrap();
    assert_eq!(r.realized_order, 72);
    assert!(r.passed());
    assert!(matches!(
        example("star", 4).validate(200_000),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn broken_iota_fails_validation() {
    let ep = example("hyperoct", 3);
    let gs = ep.gamma_set().clone();
    // the rotation is not a sign flip: not equivariant for the stabilizer of s.0
    let c = gs.gamma().generators()[0].clone();
    let bad = EquivariantPresentation::weak(gs, ep.r0().to_vec(), vec![c]).unwrap();
    let r = bad.validate(100_000).unwrap();
    assert!(!r.passed());
}

#[test]
fn relators_that_fail_to_present() {
    // a missing relation gives an infinite group, a wrong one collapses it
    let ep = example("z2sum", 3);
    let gs = ep.gamma_set().clone();
    let only_squares = EquivariantPresentation::finite(gs.clone(), vec![parse_word("s.0^2", &gs).unwrap()]).unwrap();
    assert!(matches!(only_squares.validate(20_000), Err(Error::CapExceeded { .. })));
    let collapsed = EquivariantPresentation::finite(
        gs.clone(),
        vec![parse_word("s.0^2", &gs).unwrap(), parse_word("[s.0, s.1]", &gs).unwrap(), parse_word("s.0 s.1^-1", &gs).unwrap()],
    )
    .unwrap();
    assert_eq!(collapsed.validate(20_000).unwrap().realized_order, 2);
}

#[test]
fn weak_constructor_checks_shape() {
    let g = PermGroup::new(2, vec![("a".into(), Permutation::from_images(vec![1, 0]).unwrap())]).unwrap();
    let orbit = GeneratorOrbit {
        rep_name: "s".into(),
        domain_size: 1,
        action: vec![Permutation::identity(1)],
        base_point: 0,
    };
    let gs = GammaSet::new(g, vec![orbit]).unwrap();
    assert!(EquivariantPresentation::weak(gs.clone(), vec![], vec![]).is_err());
    assert!(EquivariantPresentation::weak(gs, vec![], vec![Permutation::identity(3)]).is_err());
}
