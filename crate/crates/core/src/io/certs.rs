//! JSON form of a deweakification certificate bundle.
//!
//! Γ-elements inside steps are stored as words over `Y` (lists of indices
//! into the bundle's `y` array, shortlex-least).

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::action::{ActionTable, GammaSet};
use crate::deweak::{CertificateBundle, ConjugationTrace, DerivationTrace, Direction, Slot, SlotOrigin, Step, YElement};
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::word::SymbolRef;

use super::format::{json_error, to_canonical_json};
use super::syntax::{format_letters, format_word, parse_letters, parse_word};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YJson {
    generator: String,
    exponent: i32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessJson {
    y: usize,
    x: String,
    word: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<usize>,
    x: String,
    lhs: String,
    rhs: String,
    relator: String,
    trivial: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum StepJson {
    FreeReduce {
        position: usize,
    },
    FreeExpand {
        position: usize,
        letter: String,
    },
    Apply {
        gamma: Vec<usize>,
        slot: usize,
        position: usize,
        direction: String,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceJson {
    s: String,
    t: String,
    start: String,
    end: String,
    steps: Vec<StepJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleJson {
    x: Vec<String>,
    y: Vec<YJson>,
    witnesses: Vec<WitnessJson>,
    slots: Vec<SlotJson>,
    traces: Vec<TraceJson>,
}

/// Shortlex-least `Y`-words for every element of Γ.
fn y_words(y: &[YElement], table: &ActionTable) -> HashMap<Permutation, Vec<usize>> {
    let id = Permutation::identity(table.elements()[0].degree());
    let mut words = HashMap::from([(id.clone(), Vec::new())]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let w = words[&g].clone();
        for (i, ye) in y.iter().enumerate() {
            let h = g.then(&ye.perm);
            if !words.contains_key(&h) {
                let mut v = w.clone();
                v.push(i);
                words.insert(h.clone(), v);
                queue.push_back(h);
            }
        }
    }
    words
}

fn symbol_by_name(gs: &GammaSet, name: &str) -> Result<SymbolRef> {
    let letters = parse_letters(name, gs)?;
    match letters.as_slice() {
        [l] if !l.inverted => Ok(l.symbol),
        _ => Err(Error::UnknownSymbol(name.to_string())),
    }
}

pub fn bundle_to_json(bundle: &CertificateBundle, gs: &GammaSet, table: &ActionTable) -> Result<String> {
    let names = gs.gamma().names();
    let words = y_words(&bundle.y, table);
    let word_of = |g: &Permutation| words.get(g).cloned().ok_or(Error::NotInGroup);
    let mut traces = Vec::new();
    for ct in &bundle.traces {
        let mut steps = Vec::new();
        for s in &ct.trace.steps {
            steps.push(match s {
                Step::FreeReduce { position } => StepJson::FreeReduce { position: *position },
                Step::FreeExpand { position, letter } => StepJson::FreeExpand {
                    position: *position,
                    letter: format_letters(&[*letter], gs),
                },
                Step::ApplyRelator {
                    gamma,
                    slot,
                    position,
                    direction,
                } => StepJson::Apply {
                    gamma: word_of(gamma)?,
                    slot: *slot,
                    position: *position,
                    direction: match direction {
                        Direction::Forward => "forward".into(),
                        Direction::Backward => "backward".into(),
                    },
                },
            });
        }
        traces.push(TraceJson {
            s: gs.symbol_name(ct.s),
            t: gs.symbol_name(ct.t),
            start: format_letters(&ct.trace.start, gs),
            end: format_letters(&ct.trace.end, gs),
            steps,
        });
    }
    let json = BundleJson {
        x: bundle.x.iter().map(|&s| gs.symbol_name(s)).collect(),
        y: bundle
            .y
            .iter()
            .map(|y| YJson {
                generator: names[y.generator].clone(),
                exponent: y.exponent,
            })
            .collect(),
        witnesses: bundle
            .witnesses
            .iter()
            .enumerate()
            .flat_map(|(yi, row)| {
                row.iter().zip(&bundle.x).map(move |(w, &x)| WitnessJson {
                    y: yi,
                    x: gs.symbol_name(x),
                    word: format_word(w, gs),
                })
            })
            .collect(),
        slots: bundle
            .slots
            .iter()
            .map(|sl| {
                let (kind, s, y, x) = match sl.origin {
                    SlotOrigin::Conj { s, x } => ("conj", Some(gs.symbol_name(s)), None, x),
                    SlotOrigin::Witness { y, x } => ("witness", None, Some(y), x),
                };
                SlotJson {
                    kind: kind.into(),
                    s,
                    y,
                    x: gs.symbol_name(x),
                    lhs: format_letters(&sl.lhs, gs),
                    rhs: format_letters(&sl.rhs, gs),
                    relator: format_word(&sl.relator, gs),
                    trivial: sl.is_trivial(),
                }
            })
            .collect(),
        traces,
    };
    Ok(to_canonical_json(&json))
}

pub fn bundle_from_json(text: &str, gs: &GammaSet) -> Result<CertificateBundle> {
    let json: BundleJson = serde_json::from_str(text).map_err(json_error)?;
    let gamma = gs.gamma();
    let x = json
        .x
        .iter()
        .map(|n| symbol_by_name(gs, n))
        .collect::<Result<Vec<_>>>()?;
    let mut y = Vec::new();
    for yj in &json.y {
        let g = gamma
            .generator_index(&yj.generator)
            .ok_or_else(|| Error::UnknownGenerator(yj.generator.clone()))?;
        let perm = match yj.exponent {
            1 => gamma.generators()[g].clone(),
            -1 => gamma.generators()[g].inverse(),
            e => return Err(Error::Invalid(format!("Y exponent {e} is not ±1"))),
        };
        y.push(YElement {
            generator: g,
            exponent: yj.exponent,
            perm,
        });
    }
    let mut witnesses = vec![vec![Default::default(); x.len()]; y.len()];
    let mut filled = vec![vec![false; x.len()]; y.len()];
    for w in &json.witnesses {
        let xs = symbol_by_name(gs, &w.x)?;
        let xi = x
            .iter()
            .position(|&s| s == xs)
            .ok_or_else(|| Error::Invalid(format!("witness for `{}` which is not in X", w.x)))?;
        if w.y >= y.len() {
            return Err(Error::Invalid(format!("witness refers to Y element {}", w.y)));
        }
        witnesses[w.y][xi] = parse_word(&w.word, gs)?;
        filled[w.y][xi] = true;
    }
    if filled.iter().flatten().any(|f| !f) {
        return Err(Error::Invalid("witness table is incomplete".into()));
    }
    let mut slots = Vec::new();
    for sj in &json.slots {
        let xs = symbol_by_name(gs, &sj.x)?;
        let origin = match (sj.kind.as_str(), &sj.s, sj.y) {
            ("conj", Some(s), None) => SlotOrigin::Conj {
                s: symbol_by_name(gs, s)?,
                x: xs,
            },
            ("witness", None, Some(yi)) => SlotOrigin::Witness { y: yi, x: xs },
            _ => return Err(Error::Invalid(format!("malformed slot of kind `{}`", sj.kind))),
        };
        slots.push(Slot {
            origin,
            lhs: parse_letters(&sj.lhs, gs)?,
            rhs: parse_letters(&sj.rhs, gs)?,
            relator: parse_word(&sj.relator, gs)?,
        });
    }
    let eval_y = |word: &[usize]| -> Result<Permutation> {
        word.iter().try_fold(gamma.identity(), |acc, &i| {
            y.get(i)
                .map(|ye| acc.then(&ye.perm))
                .ok_or_else(|| Error::Invalid(format!("Y index {i} out of range")))
        })
    };
    let mut traces = Vec::new();
    for tj in &json.traces {
        let mut steps = Vec::new();
        for sj in &tj.steps {
            steps.push(match sj {
                StepJson::FreeReduce { position } => Step::FreeReduce { position: *position },
                StepJson::FreeExpand { position, letter } => {
                    let ls = parse_letters(letter, gs)?;
                    if ls.len() != 1 {
                        return Err(Error::Invalid(format!("`{letter}` is not a single letter")));
                    }
                    Step::FreeExpand {
                        position: *position,
                        letter: ls[0],
                    }
                }
                StepJson::Apply {
                    gamma,
                    slot,
                    position,
                    direction,
                } => Step::ApplyRelator {
                    gamma: eval_y(gamma)?,
                    slot: *slot,
                    position: *position,
                    direction: match direction.as_str() {
                        "forward" => Direction::Forward,
                        "backward" => Direction::Backward,
                        d => return Err(Error::Invalid(format!("unknown direction `{d}`"))),
                    },
                },
            });
        }
        traces.push(ConjugationTrace {
            s: symbol_by_name(gs, &tj.s)?,
            t: symbol_by_name(gs, &tj.t)?,
            trace: DerivationTrace {
                start: parse_letters(&tj.start, gs)?,
                steps,
                end: parse_letters(&tj.end, gs)?,
            },
        });
    }
    Ok(CertificateBundle {
        x,
        y,
        witnesses,
        slots,
        traces,
    })
}
