//! Built-in example families.
//!
//! Γ is always generated by `c` (an n-cycle, or the coordinate rotation for
//! the signed case) and `t` (a transposition, or the first sign flip).

use std::collections::BTreeMap;

use crate::equivariant::Mode;
use crate::error::{Error, Result};

use super::format::{GammaSpec, NamedPermutation, OrbitSpec, PresentationFile};

/// Name and supported range of `n` for every family.
pub const BUILTINS: &[(&str, usize, usize)] = &[("z2sum", 2, 4), ("star", 3, 4), ("hyperoct", 2, 3)];

fn rotation(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn swap01(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.swap(0, 1);
    v
}

fn extend_fixed(mut v: Vec<usize>, degree: usize) -> Vec<usize> {
    v.extend(v.len()..degree);
    v
}

fn gens(c: Vec<usize>, t: Vec<usize>) -> Vec<NamedPermutation> {
    vec![
        NamedPermutation { name: "c".into(), images: c },
        NamedPermutation { name: "t".into(), images: t },
    ]
}

fn single_orbit(n: usize, c: Vec<usize>, t: Vec<usize>) -> Vec<OrbitSpec> {
    vec![OrbitSpec {
        rep_name: "s".into(),
        domain_size: n,
        action: BTreeMap::from([("c".into(), c), ("t".into(), t)]),
        base_point: 0,
    }]
}

pub fn builtin(name: &str, n: usize) -> Result<PresentationFile> {
    let &(_, lo, hi) = BUILTINS
        .iter()
        .find(|b| b.0 == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    if n < lo || n > hi {
        return Err(Error::ExampleRange {
            name: name.to_string(),
            n,
            supported: match name {
                "z2sum" => "2-4",
                "star" => "3-4",
                _ => "2-3",
            },
        });
    }
    let file = match name {
        "z2sum" => PresentationFile {
            name: format!("z2sum {n}"),
            gamma: GammaSpec {
                degree: n,
                generators: gens(rotation(n), swap01(n)),
            },
            orbits: single_orbit(n, rotation(n), swap01(n)),
            relators: vec!["s.0^2".into(), "[s.0, s.1]".into()],
            mode: Mode::Finite,
            iota: None,
        },
        "star" => PresentationFile {
            name: format!("star {n}"),
            gamma: GammaSpec {
                degree: n + 1,
                generators: gens(extend_fixed(rotation(n), n + 1), extend_fixed(swap01(n), n + 1)),
            },
            orbits: single_orbit(n, rotation(n), swap01(n)),
            relators: vec!["s.0^2".into(), "(s.0 s.1)^3".into(), "(s.0 s.1 s.2)^4".into()],
            mode: Mode::Finite,
            iota: None,
        },
        _ => {
            // point i is +e_i, point n + i is -e_i
            let back: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
            let c: Vec<usize> = back.iter().copied().chain(back.iter().map(|&j| j + n)).collect();
            let mut t: Vec<usize> = (0..2 * n).collect();
            t.swap(0, n);
            PresentationFile {
                name: format!("hyperoct {n}"),
                gamma: GammaSpec {
                    degree: 2 * n,
                    generators: gens(c, t.clone()),
                },
                orbits: single_orbit(n, back, (0..n).collect()),
                relators: vec!["s.0^2".into()],
                mode: Mode::Weak,
                iota: Some(BTreeMap::from([("s.0".into(), t)])),
            }
        }
    };
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(builtin("nope", 3), Err(Error::UnknownExample("nope".into())));
        assert!(matches!(builtin("z2sum", 5), Err(Error::ExampleRange { n: 5, .. })));
        assert!(matches!(builtin("star", 2), Err(Error::ExampleRange { .. })));
        assert!(matches!(builtin("hyperoct", 4), Err(Error::ExampleRange { .. })));
    }

    #[test]
    fn hyperoct_shape() {
        let f = builtin("hyperoct", 3).unwrap();
        assert_eq!(f.gamma.generators[0].images, vec![2, 0, 1, 5, 3, 4]);
        assert_eq!(f.gamma.generators[1].images, vec![3, 1, 2, 0, 4, 5]);
        let ep = f.to_equivariant().unwrap();
        assert_eq!(ep.gamma_set().gamma().order().unwrap(), 24);
        assert_eq!(ep.gamma_set().symbol_count(), 3);
    }

    #[test]
    fn gamma_orders() {
        for (name, n, order) in [("z2sum", 2, 2), ("z2sum", 3, 6), ("z2sum", 4, 24), ("star", 3, 6), ("star", 4, 24)] {
            let ep = builtin(name, n).unwrap().to_equivariant().unwrap();
            assert_eq!(ep.gamma_set().gamma().order().unwrap(), order, "{name} {n}");
        }
    }
}
