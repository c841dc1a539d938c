use eqpres::homology::{smith_normal_form, EquivariantHomology, HomologyOptions, Matrix};
use eqpres::io::builtin;
use eqpres::permgroup::generated_order;
use eqpres::word::{has_cancellation, reduce};
use eqpres::{Letter, PermGroup, Permutation, SymbolRef, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    (0usize..2, 0usize..3, any::<bool>()).prop_map(|(o, p, inv)| {
        let s = SymbolRef::new(o, p);
        if inv {
            Letter::neg(s)
        } else {
            Letter::pos(s)
        }
    })
}

fn raw() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn word_reduction_laws(a in raw(), b in raw(), c in raw(), n in -4i32..5, m in -4i32..5) {
        let (u, v, w) = (reduce(a.clone()), reduce(b.clone()), reduce(c));
        prop_assert!(!has_cancellation(u.letters()));
        prop_assert_eq!(reduce(u.letters().to_vec()), u.clone());
        prop_assert_eq!(reduce(a.iter().copied().chain(b.iter().copied())), u.concat(&v));
        prop_assert!(u.concat(&u.inverse()).is_empty());
        prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
        prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
        prop_assert_eq!(u.pow(n).concat(&u.pow(m)), u.pow(n + m));
        let mut sums = u.exponent_sums();
        for (s, e) in v.exponent_sums() {
            *sums.entry(s).or_insert(0) += e;
        }
        sums.retain(|_, e| *e != 0);
        prop_assert_eq!(u.concat(&v).exponent_sums().into_iter().filter(|(_, e)| *e != 0).collect::<std::collections::BTreeMap<_, _>>(), sums);
        prop_assert!(u.commutator(&u).is_empty());
    }
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Bareiss
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// gcd of all k×k minors.
fn minor_gcd(a: &Matrix<BigInt>, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 5 => -9i64..10], r * c)
            .prop_map(move |v| Matrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_agrees_with_minors(a in matrix()) {
        let s = smith_normal_form(&a);
        for w in s.diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.diag.iter().all(|d| d.is_positive()));
        let ua = s.u.as_ref().unwrap().mul(&a).unwrap();
        prop_assert_eq!(ua.mul(s.v.as_ref().unwrap()).unwrap(), s.d_matrix());
        prop_assert_eq!(s.u.as_ref().unwrap().mul(s.u_inv.as_ref().unwrap()).unwrap(), Matrix::identity(a.rows()));
        prop_assert_eq!(s.v.as_ref().unwrap().mul(s.v_inv.as_ref().unwrap()).unwrap(), Matrix::identity(a.cols()));
        let mut prod = BigInt::from(1);
        for k in 1..=a.rows().min(a.cols()) {
            let g = minor_gcd(&a, k);
            if k <= s.rank() {
                prod *= &s.diag[k - 1];
                prop_assert_eq!(&g, &prod);
            } else {
                prop_assert!(g.is_zero());
            }
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn check_orbit_stabilizer(g: &PermGroup) {
    let order = g.order().unwrap();
    for p in 0..g.degree() {
        let orbit = g.orbit(p).unwrap();
        let stab = g.stabilizer_generators(p).unwrap();
        let stab_order = generated_order(g.degree(), &stab, order).unwrap();
        assert!(stab.iter().all(|s| s.apply(p) == p));
        assert_eq!(orbit.len() * stab_order, order, "point {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orbit_stabilizer_random(gens in (2usize..8).prop_flat_map(|n| prop::collection::vec(perm_strategy(n), 1..3))) {
        let n = gens[0].degree();
        let named = gens.into_iter().enumerate().map(|(i, p)| (format!("g{i}"), p)).collect();
        check_orbit_stabilizer(&PermGroup::new(n, named).unwrap());
    }
}

#[test]
fn orbit_stabilizer_on_example_groups() {
    for (name, n) in [("z2sum", 2), ("z2sum", 3), ("z2sum", 4), ("star", 3), ("star", 4), ("hyperoct", 2), ("hyperoct", 3)] {
        let ep = builtin(name, n).unwrap().to_equivariant().unwrap();
        check_orbit_stabilizer(ep.gamma_set().gamma());
        let gs = ep.gamma_set();
        let order = gs.gamma().order().unwrap();
        for s in gs.enumerate_s() {
            let stab = gs.stabilizer_of_symbol(s).unwrap();
            let k = generated_order(gs.gamma().degree(), &stab, order).unwrap();
            assert_eq!(gs.orbits()[s.orbit_index].domain_size * k, order, "{name} {n} {s}");
        }
    }
    for (name, n) in [("z2sum", 3), ("hyperoct", 3)] {
        let ep = builtin(name, n).unwrap().to_equivariant().unwrap();
        let (_, real) = ep.realize(100_000).unwrap();
        check_orbit_stabilizer(&real.group);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h2_action_is_functorial(case in 0usize..3, i in 0usize..24, j in 0usize..24) {
        thread_local! {
            static CACHE: Vec<EquivariantHomology> = [("z2sum", 3), ("z2sum", 4), ("hyperoct", 3)]
                .iter()
                .map(|&(name, n)| {
                    let ep = builtin(name, n).unwrap().to_equivariant().unwrap();
                    let ep = if ep.mode() == eqpres::Mode::Weak { eqpres::deweak::deweakify(&ep, 100_000).unwrap().0 } else { ep };
                    EquivariantHomology::compute(&ep, HomologyOptions::default()).unwrap()
                })
                .collect();
        }
        CACHE.with(|all| {
            let eh = &all[case];
            let elems = eh.table.elements();
            let (g, d) = (&elems[i % elems.len()], &elems[j % elems.len()]);
            let lhs = eh.h2_matrix_of(&g.then(d)).unwrap();
            let rhs = eh.h2_product(&eh.h2_matrix_of(g).unwrap(), &eh.h2_matrix_of(d).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        });
    }
}

#[test]
fn word_from_letters() {
    let s = SymbolRef::new(0, 0);
    let w: Word = vec![Letter::pos(s), Letter::neg(s)].into();
    assert!(w.is_empty());
}
