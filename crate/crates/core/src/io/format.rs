//! The JSON presentation file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::action::{GammaSet, GeneratorOrbit};
use crate::equivariant::{EquivariantPresentation, Mode};
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

use super::syntax::{format_word, parse_word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPermutation {
    pub name: String,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSpec {
    pub degree: usize,
    pub generators: Vec<NamedPermutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSpec {
    pub rep_name: String,
    pub domain_size: usize,
    /// Γ-generator name to the permutation of `0..domain_size` it induces.
    pub action: BTreeMap<String, Vec<usize>>,
    pub base_point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub name: String,
    pub gamma: GammaSpec,
    pub orbits: Vec<OrbitSpec>,
    pub relators: Vec<String>,
    pub mode: Mode,
    /// Representative symbol name (`s.0`) to its Γ-element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<BTreeMap<String, Vec<usize>>>,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn perm(images: &[usize], degree: usize, what: &str) -> Result<Permutation> {
    if images.len() != degree {
        return Err(Error::Invalid(format!(
            "{what} has {} images, expected {degree}",
            images.len()
        )));
    }
    Permutation::from_images(images.to_vec())
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: PresentationFile = serde_json::from_str(text).map_err(json_error)?;
        f.to_equivariant()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn gamma_set(&self) -> Result<GammaSet> {
        let mut gens = Vec::new();
        for g in &self.gamma.generators {
            gens.push((g.name.clone(), perm(&g.images, self.gamma.degree, &format!("generator `{}`", g.name))?));
        }
        let gamma = PermGroup::new(self.gamma.degree, gens)?;
        let mut orbits = Vec::new();
        for o in &self.orbits {
            for key in o.action.keys() {
                if gamma.generator_index(key).is_none() {
                    return Err(Error::UnknownGenerator(key.clone()));
                }
            }
            let mut action = Vec::new();
            for name in gamma.names() {
                let images = o.action.get(name).ok_or_else(|| {
                    Error::Invalid(format!("orbit `{}` has no action for generator `{name}`", o.rep_name))
                })?;
                action.push(perm(images, o.domain_size, &format!("action of `{name}` on orbit `{}`", o.rep_name))?);
            }
            orbits.push(GeneratorOrbit {
                rep_name: o.rep_name.clone(),
                domain_size: o.domain_size,
                action,
                base_point: o.base_point,
            });
        }
        GammaSet::new(gamma, orbits)
    }

    pub fn to_equivariant(&self) -> Result<EquivariantPresentation> {
        let gs = self.gamma_set()?;
        let r0 = self
            .relators
            .iter()
            .map(|t| parse_word(t, &gs))
            .collect::<Result<Vec<_>>>()?;
        match (self.mode, &self.iota) {
            (Mode::Finite, None) => EquivariantPresentation::finite(gs, r0),
            (Mode::Finite, Some(_)) => Err(Error::Invalid("finite mode takes no iota".into())),
            (Mode::Weak, None) => Err(Error::Invalid("weak mode requires iota".into())),
            (Mode::Weak, Some(map)) => {
                for key in map.keys() {
                    if !gs.s0().iter().any(|&s| &gs.symbol_name(s) == key) {
                        return Err(Error::UnknownSymbol(key.clone()));
                    }
                }
                let mut iota = Vec::new();
                for s in gs.s0() {
                    let name = gs.symbol_name(s);
                    let images = map
                        .get(&name)
                        .ok_or_else(|| Error::Invalid(format!("iota has no image for `{name}`")))?;
                    iota.push(perm(images, self.gamma.degree, &format!("iota of `{name}`"))?);
                }
                EquivariantPresentation::weak(gs, r0, iota)
            }
        }
    }

    pub fn from_equivariant(name: &str, ep: &EquivariantPresentation) -> Self {
        let gs = ep.gamma_set();
        let gamma = gs.gamma();
        let names = gamma.names();
        PresentationFile {
            name: name.to_string(),
            gamma: GammaSpec {
                degree: gamma.degree(),
                generators: names
                    .iter()
                    .zip(gamma.generators())
                    .map(|(n, p)| NamedPermutation {
                        name: n.clone(),
                        images: p.images().to_vec(),
                    })
                    .collect(),
            },
            orbits: gs
                .orbits()
                .iter()
                .map(|o| OrbitSpec {
                    rep_name: o.rep_name.clone(),
                    domain_size: o.domain_size,
                    action: names
                        .iter()
                        .cloned()
                        .zip(o.action.iter().map(|p| p.images().to_vec()))
                        .collect(),
                    base_point: o.base_point,
                })
                .collect(),
            relators: ep.r0().iter().map(|w| format_word(w, gs)).collect(),
            mode: ep.mode(),
            iota: ep.iota().map(|iota| {
                gs.s0()
                    .into_iter()
                    .zip(iota)
                    .map(|(s, p)| (gs.symbol_name(s), p.images().to_vec()))
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin::{builtin, BUILTINS};

    #[test]
    fn builtins_round_trip() {
        for &(name, lo, hi) in BUILTINS {
            for n in lo..=hi {
                let f = builtin(name, n).unwrap();
                let text = f.to_json();
                let back = PresentationFile::from_json(&text).unwrap();
                assert_eq!(back, f);
                assert_eq!(back.to_json(), text);
                let ep = f.to_equivariant().unwrap();
                let canon = PresentationFile::from_equivariant(&f.name, &ep);
                assert_eq!(canon.to_equivariant().unwrap(), ep);
                assert_eq!(PresentationFile::from_json(&canon.to_json()).unwrap(), canon);
            }
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = builtin("hyperoct", 2).unwrap().to_json();
        let at = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
        assert!(at("gamma") < at("iota") && at("iota") < at("mode") && at("mode") < at("name"));
        assert!(at("name") < at("orbits") && at("orbits") < at("relators"));
    }

    #[test]
    fn rejects_bad_files() {
        let mut f = builtin("z2sum", 3).unwrap();
        f.gamma.generators[0].images = vec![0, 0, 1];
        assert_eq!(f.to_equivariant(), Err(Error::NotAPermutation(3)));

        let mut f = builtin("hyperoct", 2).unwrap();
        f.iota = None;
        assert!(matches!(f.to_equivariant(), Err(Error::Invalid(_))));
        let text = f.to_json();
        assert!(PresentationFile::from_json(&text).is_err());

        let mut f = builtin("z2sum", 2).unwrap();
        f.relators.push("q.0".into());
        assert_eq!(f.to_equivariant(), Err(Error::UnknownSymbol("q.0".into())));

        let mut f = builtin("z2sum", 2).unwrap();
        f.orbits[0].action.insert("zz".into(), vec![0, 1]);
        assert_eq!(f.to_equivariant(), Err(Error::UnknownGenerator("zz".into())));

        assert!(matches!(PresentationFile::from_json("{\"name\": 3}"), Err(Error::Parse { line: 1, .. })));
    }
}
