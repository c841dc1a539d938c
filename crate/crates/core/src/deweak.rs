//! Turning a weakly-finite equivariant presentation into a finite one, with a
//! replayable derivation of every conjugation relation.
//!
//! Words inside traces are raw letter sequences; a trace only ever changes
//! them by free moves or by substituting one side of a Γ-translate of an
//! `R₀′` relator for the other.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::action::ActionTable;
use crate::equivariant::{Check, EquivariantPresentation, Mode};
use crate::error::{Error, Result};
use crate::permgroup::{generated_order, CayleyBfs, PermGroup, Permutation};
use crate::presentation::Realization;
use crate::word::{reduce, Letter, SymbolRef, Word};

/// An element of the symmetric generating set `Y`: a Γ generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YElement {
    pub generator: usize,
    pub exponent: i32,
    pub perm: Permutation,
}

/// Declared generators, each followed by its inverse unless that is already present.
pub fn symmetric_y(gamma: &PermGroup) -> Vec<YElement> {
    let mut out: Vec<YElement> = Vec::new();
    for (i, g) in gamma.generators().iter().enumerate() {
        for (e, p) in [(1, g.clone()), (-1, g.inverse())] {
            if !out.iter().any(|y| y.perm == p) {
                out.push(YElement {
                    generator: i,
                    exponent: e,
                    perm: p,
                });
            }
        }
    }
    out
}

/// `S₀` followed by every symbol that strictly enlarges the generated subgroup.
pub fn choose_x(ep: &EquivariantPresentation, real: &Realization) -> Result<Vec<SymbolRef>> {
    let gs = ep.gamma_set();
    let order = real.order();
    let perm = |s: SymbolRef| real.assignment[&s].clone();
    let mut x = gs.s0();
    let mut current = generated_order(order, &x.iter().map(|&s| perm(s)).collect::<Vec<_>>(), order)?;
    for s in gs.enumerate_s() {
        if current == order {
            break;
        }
        if x.contains(&s) {
            continue;
        }
        let mut gens: Vec<Permutation> = x.iter().map(|&t| perm(t)).collect();
        gens.push(perm(s));
        let bigger = generated_order(order, &gens, order)?;
        if bigger > current {
            x.push(s);
            current = bigger;
        }
    }
    Ok(x)
}

/// Shortest words over `X ∪ X⁻¹` for `^y x`, indexed `[y][x]`.
pub fn witness_words(
    x: &[SymbolRef],
    y: &[YElement],
    table: &ActionTable,
    real: &Realization,
) -> Result<Vec<Vec<Word>>> {
    let letters: Vec<Letter> = x.iter().flat_map(|&s| [Letter::pos(s), Letter::neg(s)]).collect();
    let perms: Vec<Permutation> = letters
        .iter()
        .map(|l| {
            let p = &real.assignment[&l.symbol];
            if l.inverted {
                p.inverse()
            } else {
                p.clone()
            }
        })
        .collect();
    let bfs = CayleyBfs::run(
        Permutation::identity(real.order()),
        &perms,
        real.order().max(1),
        "witness search",
    )?;
    y.iter()
        .map(|ye| {
            let k = table.element_index(&ye.perm).ok_or(Error::NotInGroup)?;
            x.iter()
                .map(|&s| {
                    let target = &real.assignment[&table.act_symbol(k, s)];
                    let idx = *bfs.index.get(target).ok_or(Error::NotInGroup)?;
                    Ok(reduce(bfs.word_to(idx).into_iter().map(|i| letters[i])))
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotOrigin {
    /// `s·x·s⁻¹ = ^s x` for `s ∈ S₀`, `x ∈ X`.
    Conj { s: SymbolRef, x: SymbolRef },
    /// `^y x = w_{y,x}`, `y` an index into `Y`.
    Witness { y: usize, x: SymbolRef },
}

/// One member of `R₀′`, stored as an equation `lhs = rhs` whose relator is
/// the free reduction of `lhs·rhs⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub origin: SlotOrigin,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
    pub relator: Word,
}

impl Slot {
    pub fn new(origin: SlotOrigin, lhs: Vec<Letter>, rhs: Vec<Letter>) -> Self {
        let relator = reduce(lhs.iter().copied().chain(rhs.iter().rev().map(|l| l.inverse())));
        Slot {
            origin,
            lhs,
            rhs,
            relator,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.relator.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.relator == reduce(self.lhs.iter().copied().chain(self.rhs.iter().rev().map(|l| l.inverse())))
    }
}

/// `R₀″` (s-major over `S₀ × X`) followed by `R₀‴` (y-major over `Y × X`).
pub fn build_r0prime(
    ep: &EquivariantPresentation,
    table: &ActionTable,
    x: &[SymbolRef],
    y: &[YElement],
    witnesses: &[Vec<Word>],
) -> Result<Vec<Slot>> {
    let iota = ep.iota().ok_or(Error::ModeMismatch { expected: "weak" })?;
    let gs = ep.gamma_set();
    let mut slots = Vec::new();
    for s in gs.s0() {
        let k = table.element_index(&iota[s.orbit_index]).ok_or(Error::NotInGroup)?;
        for &xs in x {
            slots.push(Slot::new(
                SlotOrigin::Conj { s, x: xs },
                vec![Letter::pos(s), Letter::pos(xs), Letter::neg(s)],
                vec![Letter::pos(table.act_symbol(k, xs))],
            ));
        }
    }
    for (yi, (ye, row)) in y.iter().zip(witnesses).enumerate() {
        let k = table.element_index(&ye.perm).ok_or(Error::NotInGroup)?;
        for (xi, w) in row.iter().enumerate() {
            let target = table.act_symbol(k, x[xi]);
            slots.push(Slot::new(
                SlotOrigin::Witness { y: yi, x: x[xi] },
                vec![Letter::pos(target)],
                w.letters().to_vec(),
            ));
        }
    }
    Ok(slots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Deletes the cancelling pair at `position`, `position + 1`.
    FreeReduce { position: usize },
    /// Inserts `letter, letter⁻¹` before `position`.
    FreeExpand { position: usize, letter: Letter },
    /// Forward replaces `^γ lhs` at `position` by `^γ rhs`; backward the reverse.
    ApplyRelator {
        gamma: Permutation,
        slot: usize,
        position: usize,
        direction: Direction,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Vec<Letter>,
    pub steps: Vec<Step>,
    pub end: Vec<Letter>,
}

impl DerivationTrace {
    pub fn empty(start: Vec<Letter>) -> Self {
        DerivationTrace {
            end: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    pub fn relator_applications(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::ApplyRelator { .. }))
            .count()
    }

    /// The image of the whole trace under `δ ∈ Γ`.
    fn transport(&self, delta: &Permutation, table: &ActionTable) -> Result<Self> {
        let k = table.element_index(delta).ok_or(Error::NotInGroup)?;
        let act = |ls: &[Letter]| ls.iter().map(|&l| table.act_letter(k, l)).collect::<Vec<_>>();
        Ok(DerivationTrace {
            start: act(&self.start),
            end: act(&self.end),
            steps: self
                .steps
                .iter()
                .map(|s| match s {
                    Step::FreeReduce { .. } => s.clone(),
                    Step::FreeExpand { position, letter } => Step::FreeExpand {
                        position: *position,
                        letter: table.act_letter(k, *letter),
                    },
                    Step::ApplyRelator {
                        gamma,
                        slot,
                        position,
                        direction,
                    } => Step::ApplyRelator {
                        gamma: delta.then(gamma),
                        slot: *slot,
                        position: *position,
                        direction: *direction,
                    },
                })
                .collect(),
        })
    }

    /// The same derivation inside `prefix · _ · suffix`.
    fn embed(&self, prefix: &[Letter], suffix: &[Letter]) -> Self {
        let wrap = |ls: &[Letter]| [prefix, ls, suffix].concat();
        let off = prefix.len();
        DerivationTrace {
            start: wrap(&self.start),
            end: wrap(&self.end),
            steps: self
                .steps
                .iter()
                .map(|s| match s {
                    Step::FreeReduce { position } => Step::FreeReduce { position: position + off },
                    Step::FreeExpand { position, letter } => Step::FreeExpand {
                        position: position + off,
                        letter: *letter,
                    },
                    Step::ApplyRelator {
                        gamma,
                        slot,
                        position,
                        direction,
                    } => Step::ApplyRelator {
                        gamma: gamma.clone(),
                        slot: *slot,
                        position: position + off,
                        direction: *direction,
                    },
                })
                .collect(),
        }
    }

    /// The derivation run backwards, from `end` to `start`.
    fn reversed(&self, slots: &[Slot], table: &ActionTable) -> Result<Self> {
        let mut states = vec![self.start.clone()];
        let mut cur = self.start.clone();
        for (i, s) in self.steps.iter().enumerate() {
            apply_step(&mut cur, s, i, slots, table)?;
            states.push(cur.clone());
        }
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate().rev() {
            steps.push(match s {
                Step::FreeReduce { position } => Step::FreeExpand {
                    position: *position,
                    letter: states[i][*position],
                },
                Step::FreeExpand { position, .. } => Step::FreeReduce { position: *position },
                Step::ApplyRelator {
                    gamma,
                    slot,
                    position,
                    direction,
                } => Step::ApplyRelator {
                    gamma: gamma.clone(),
                    slot: *slot,
                    position: *position,
                    direction: match direction {
                        Direction::Forward => Direction::Backward,
                        Direction::Backward => Direction::Forward,
                    },
                },
            });
        }
        Ok(DerivationTrace {
            start: self.end.clone(),
            steps,
            end: self.start.clone(),
        })
    }
}

fn malformed(index: usize, reason: impl Into<String>) -> Error {
    Error::MalformedStep {
        index,
        reason: reason.into(),
    }
}

/// Performs one step on `seq`, checking it is legal.
fn apply_step(seq: &mut Vec<Letter>, step: &Step, index: usize, slots: &[Slot], table: &ActionTable) -> Result<()> {
    match step {
        Step::FreeReduce { position } => {
            let p = *position;
            if p + 1 >= seq.len() {
                return Err(malformed(index, format!("reduction at {p} past the end of a word of length {}", seq.len())));
            }
            if !seq[p].cancels(seq[p + 1]) {
                return Err(malformed(index, format!("letters at {p} and {} do not cancel", p + 1)));
            }
            seq.drain(p..p + 2);
        }
        Step::FreeExpand { position, letter } => {
            if *position > seq.len() {
                return Err(malformed(index, format!("insertion at {position} past the end")));
            }
            seq.splice(*position..*position, [*letter, letter.inverse()]);
        }
        Step::ApplyRelator {
            gamma,
            slot,
            position,
            direction,
        } => {
            let sl = slots.get(*slot).ok_or_else(|| malformed(index, format!("no relator slot {slot}")))?;
            if sl.is_trivial() {
                return Err(malformed(index, format!("slot {slot} holds a trivial relator")));
            }
            let k = table
                .element_index(gamma)
                .ok_or_else(|| malformed(index, "acting element is not in Γ"))?;
            let act = |ls: &[Letter]| ls.iter().map(|&l| table.act_letter(k, l)).collect::<Vec<_>>();
            let (from, to) = match direction {
                Direction::Forward => (act(&sl.lhs), act(&sl.rhs)),
                Direction::Backward => (act(&sl.rhs), act(&sl.lhs)),
            };
            let p = *position;
            if p + from.len() > seq.len() || seq[p..p + from.len()] != from[..] {
                return Err(malformed(index, format!("relator side does not occur at {p}")));
            }
            seq.splice(p..p + from.len(), to);
        }
    }
    Ok(())
}

/// Replays `trace`; `Ok(false)` if it runs but does not reach `end`.
pub fn check_trace(trace: &DerivationTrace, slots: &[Slot], table: &ActionTable) -> Result<bool> {
    let mut cur = trace.start.clone();
    for (i, s) in trace.steps.iter().enumerate() {
        apply_step(&mut cur, s, i, slots, table)?;
    }
    Ok(cur == trace.end)
}

/// Accumulates steps while tracking the current word.
struct Builder<'a> {
    slots: &'a [Slot],
    table: &'a ActionTable,
    identity: Permutation,
    trace: DerivationTrace,
}

impl<'a> Builder<'a> {
    fn new(start: Vec<Letter>, slots: &'a [Slot], table: &'a ActionTable, identity: Permutation) -> Self {
        Builder {
            slots,
            table,
            identity,
            trace: DerivationTrace::empty(start),
        }
    }

    fn push(&mut self, step: Step) -> Result<()> {
        let i = self.trace.steps.len();
        apply_step(&mut self.trace.end, &step, i, self.slots, self.table)?;
        self.trace.steps.push(step);
        Ok(())
    }

    fn append(&mut self, t: &DerivationTrace) -> Result<()> {
        debug_assert_eq!(t.start, self.trace.end, "appended trace must start where the current one ends");
        for s in &t.steps {
            self.push(s.clone())?;
        }
        Ok(())
    }

    /// Freely reduces the `len` letters at `pos` (left to right, innermost
    /// pairs first); returns the reduced length.
    fn reduce_segment(&mut self, pos: usize, len: usize) -> Result<usize> {
        let mut len = len;
        'outer: loop {
            for i in pos..pos + len.saturating_sub(1) {
                if self.trace.end[i].cancels(self.trace.end[i + 1]) {
                    self.push(Step::FreeReduce { position: i })?;
                    len -= 2;
                    continue 'outer;
                }
            }
            return Ok(len);
        }
    }

    /// Replaces `lhs` (untranslated) at `pos` by `rhs`; returns the new length.
    fn forward(&mut self, slot: usize, pos: usize) -> Result<usize> {
        let sl = &self.slots[slot];
        if sl.is_trivial() {
            let n = self.reduce_segment(pos, sl.lhs.len())?;
            debug_assert_eq!(self.trace.end[pos..pos + n], sl.rhs[..]);
            return Ok(n);
        }
        let n = sl.rhs.len();
        self.push(Step::ApplyRelator {
            gamma: self.identity.clone(),
            slot,
            position: pos,
            direction: Direction::Forward,
        })?;
        Ok(n)
    }

    /// Replaces `lhs⁻¹` at `pos` by `rhs⁻¹`: insert `rhs⁻¹·rhs` in front,
    /// turn that `rhs` back into `lhs`, then cancel `lhs·lhs⁻¹`.
    fn inverse(&mut self, slot: usize, pos: usize) -> Result<usize> {
        let sl = self.slots[slot].clone();
        if sl.is_trivial() {
            let n = self.reduce_segment(pos, sl.lhs.len())?;
            return Ok(n);
        }
        let k = sl.rhs.len();
        for (i, l) in sl.rhs.iter().rev().enumerate() {
            self.push(Step::FreeExpand {
                position: pos + i,
                letter: l.inverse(),
            })?;
        }
        self.push(Step::ApplyRelator {
            gamma: self.identity.clone(),
            slot,
            position: pos + k,
            direction: Direction::Backward,
        })?;
        // now rhs⁻¹ · lhs · lhs⁻¹ at pos
        let m = sl.lhs.len();
        for i in (0..m).rev() {
            self.push(Step::FreeReduce { position: pos + k + i })?;
        }
        Ok(k)
    }
}

/// Everything the derivations need.
pub struct Deweak {
    pub ep: EquivariantPresentation,
    pub table: ActionTable,
    pub realization: Realization,
    pub x: Vec<SymbolRef>,
    pub y: Vec<YElement>,
    pub witnesses: Vec<Vec<Word>>,
    pub slots: Vec<Slot>,
    /// For each symbol, the `Y` index and predecessor with `u = ^y u′` on a
    /// shortest path from its orbit's base point.
    orbit_parent: HashMap<SymbolRef, Option<(usize, SymbolRef)>>,
}

impl Deweak {
    pub fn new(ep: &EquivariantPresentation, max_cosets: usize) -> Result<Self> {
        if ep.mode() != Mode::Weak {
            return Err(Error::ModeMismatch { expected: "weak" });
        }
        let table = ep.tabulate()?;
        let (_, realization) = ep.realize(max_cosets)?;
        let x = choose_x(ep, &realization)?;
        let y = symmetric_y(ep.gamma_set().gamma());
        let witnesses = witness_words(&x, &y, &table, &realization)?;
        let slots = build_r0prime(ep, &table, &x, &y, &witnesses)?;
        let mut orbit_parent = HashMap::new();
        for s0 in ep.gamma_set().s0() {
            orbit_parent.insert(s0, None);
            let mut queue = VecDeque::from([s0]);
            while let Some(p) = queue.pop_front() {
                for (yi, ye) in y.iter().enumerate() {
                    let k = table.element_index(&ye.perm).ok_or(Error::NotInGroup)?;
                    let q = table.act_symbol(k, p);
                    if let std::collections::hash_map::Entry::Vacant(e) = orbit_parent.entry(q) {
                        e.insert(Some((yi, p)));
                        queue.push_back(q);
                    }
                }
            }
        }
        Ok(Deweak {
            ep: ep.clone(),
            table,
            realization,
            x,
            y,
            witnesses,
            slots,
            orbit_parent,
        })
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.ep.gamma_set().gamma().degree())
    }

    /// `γ` as a product of `Y` elements with `s = ^γ s₀`, outermost first.
    pub fn y_path(&self, s: SymbolRef) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = s;
        while let Some(Some((yi, prev))) = self.orbit_parent.get(&cur) {
            out.push(*yi);
            cur = *prev;
        }
        out
    }

    fn gamma_of(&self, path: &[usize]) -> Permutation {
        path.iter().fold(self.identity(), |acc, &yi| acc.then(&self.y[yi].perm))
    }

    fn slot_index(&self, origin: SlotOrigin) -> usize {
        self.slots
            .iter()
            .position(|s| s.origin == origin)
            .expect("every origin has a slot")
    }

    fn x_index(&self, s: SymbolRef) -> Option<usize> {
        self.x.iter().position(|&t| t == s)
    }

    /// A derivation from `[u]` to a word over `X`.
    pub fn derive_claim1(&self, u: SymbolRef) -> Result<DerivationTrace> {
        if self.x_index(u).is_some() {
            return Ok(DerivationTrace::empty(vec![Letter::pos(u)]));
        }
        let (yi, prev) = self.orbit_parent[&u].expect("S₀ lies in X, so u has a parent");
        let inner = self.derive_claim1(prev)?;
        let moved = inner.transport(&self.y[yi].perm, &self.table)?;
        let mut b = Builder::new(moved.start.clone(), &self.slots, &self.table, self.identity());
        b.append(&moved)?;
        let mut pos = 0;
        for l in &inner.end {
            let slot = self.slot_index(SlotOrigin::Witness { y: yi, x: l.symbol });
            pos += if l.inverted { b.inverse(slot, pos)? } else { b.forward(slot, pos)? };
        }
        Ok(b.trace)
    }

    /// `[s₀, u, s₀⁻¹] → [^{s₀} u]` for a representative `s₀`.
    fn derive_claim2(&self, s0: SymbolRef, u: SymbolRef) -> Result<DerivationTrace> {
        let iota = &self.ep.iota().expect("weak mode")[s0.orbit_index];
        let t1 = self.derive_claim1(u)?;
        let ctx = t1.embed(&[Letter::pos(s0)], &[Letter::neg(s0)]);
        let mut b = Builder::new(ctx.start.clone(), &self.slots, &self.table, self.identity());
        b.append(&ctx)?;
        let k = t1.end.len();
        if k == 0 {
            b.push(Step::FreeReduce { position: 0 })?;
        } else {
            // s₀ l₁ s₀⁻¹ s₀ l₂ s₀⁻¹ … s₀ l_k s₀⁻¹
            for i in (1..k).rev() {
                b.push(Step::FreeExpand {
                    position: 1 + i,
                    letter: Letter::neg(s0),
                })?;
            }
            let mut pos = 0;
            for l in &t1.end {
                let slot = self.slot_index(SlotOrigin::Conj { s: s0, x: l.symbol });
                pos += if l.inverted { b.inverse(slot, pos)? } else { b.forward(slot, pos)? };
            }
        }
        let back = t1.transport(iota, &self.table)?.reversed(&self.slots, &self.table)?;
        b.append(&back)?;
        Ok(b.trace)
    }

    /// `[s, t, s⁻¹] → [^s t]`.
    pub fn derive_conjugation(&self, s: SymbolRef, t: SymbolRef) -> Result<DerivationTrace> {
        let gs = self.ep.gamma_set();
        let s0 = gs.s0()[s.orbit_index];
        let gamma = self.gamma_of(&self.y_path(s));
        let k_inv = self.table.element_index(&gamma.inverse()).ok_or(Error::NotInGroup)?;
        let u = self.table.act_symbol(k_inv, t);
        self.derive_claim2(s0, u)?.transport(&gamma, &self.table)
    }

    /// `^s t` computed through `ι(s)`.
    pub fn conjugate_symbol(&self, s: SymbolRef, t: SymbolRef) -> Result<SymbolRef> {
        let iota = self.ep.iota_all(&self.table)?;
        let pos = self.ep.gamma_set().symbol_position(s)?;
        self.table.act_symbol_by(&iota[pos], t)
    }

    pub fn derive_all(&self) -> Result<Vec<ConjugationTrace>> {
        let symbols = self.ep.gamma_set().enumerate_s();
        let mut out = Vec::new();
        for &s in &symbols {
            for &t in &symbols {
                out.push(ConjugationTrace {
                    s,
                    t,
                    trace: self.derive_conjugation(s, t)?,
                });
            }
        }
        Ok(out)
    }

    /// The finite presentation with relators `R₀ ∪ R₀″ ∪ R₀‴` (nontrivial,
    /// exact duplicates removed, first occurrence kept).
    pub fn output(&self) -> Result<EquivariantPresentation> {
        let mut seen = BTreeSet::new();
        let mut r0 = Vec::new();
        let added = self.slots.iter().filter(|s| !s.is_trivial()).map(|s| s.relator.clone());
        for w in self.ep.r0().iter().cloned().chain(added) {
            if !w.is_empty() && seen.insert(w.clone()) {
                r0.push(w);
            }
        }
        EquivariantPresentation::finite(self.ep.gamma_set().clone(), r0)
    }

    pub fn bundle(&self) -> Result<CertificateBundle> {
        Ok(CertificateBundle {
            x: self.x.clone(),
            y: self.y.clone(),
            witnesses: self.witnesses.clone(),
            slots: self.slots.clone(),
            traces: self.derive_all()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationTrace {
    pub s: SymbolRef,
    pub t: SymbolRef,
    pub trace: DerivationTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateBundle {
    pub x: Vec<SymbolRef>,
    pub y: Vec<YElement>,
    pub witnesses: Vec<Vec<Word>>,
    pub slots: Vec<Slot>,
    pub traces: Vec<ConjugationTrace>,
}

/// Converts a weak presentation to a finite one and certifies every
/// conjugation relation.
pub fn deweakify(ep: &EquivariantPresentation, max_cosets: usize) -> Result<(EquivariantPresentation, CertificateBundle)> {
    let d = Deweak::new(ep, max_cosets)?;
    Ok((d.output()?, d.bundle()?))
}

/// Audits a bundle against the finite presentation it accompanies.
pub fn check_bundle(out: &EquivariantPresentation, bundle: &CertificateBundle, max_cosets: usize) -> Result<Vec<Check>> {
    let gs = out.gamma_set();
    let table = out.tabulate()?;
    let (_, real) = out.realize(max_cosets)?;
    let mut checks = Vec::new();

    let r0: BTreeSet<&Word> = out.r0().iter().collect();
    let consistent = bundle.slots.iter().all(Slot::is_consistent);
    let present = bundle.slots.iter().filter(|s| !s.is_trivial()).all(|s| r0.contains(&s.relator));
    checks.push(Check::new(
        "slots_in_presentation",
        consistent && present,
        format!("{} slots, {} nontrivial", bundle.slots.len(), bundle.slots.iter().filter(|s| !s.is_trivial()).count()),
    ));

    let x_order = generated_order(
        real.order(),
        &bundle.x.iter().map(|s| real.assignment[s].clone()).collect::<Vec<_>>(),
        real.order(),
    )?;
    let s0_in_x = gs.s0().iter().all(|s| bundle.x.contains(s));
    checks.push(Check::new(
        "x_generates",
        x_order == real.order() && s0_in_x,
        format!("X generates a subgroup of order {x_order} of {}", real.order()),
    ));

    let y_closed = bundle.y.iter().all(|y| bundle.y.iter().any(|z| z.perm == y.perm.inverse()));
    checks.push(Check::new("y_symmetric", y_closed, format!("|Y| = {}", bundle.y.len())));

    let mut witness_ok = bundle.witnesses.len() == bundle.y.len();
    for (ye, row) in bundle.y.iter().zip(&bundle.witnesses) {
        let k = table.element_index(&ye.perm).ok_or(Error::NotInGroup)?;
        witness_ok &= row.len() == bundle.x.len();
        for (&x, w) in bundle.x.iter().zip(row) {
            let target = &real.assignment[&table.act_symbol(k, x)];
            let value = out_eval(&real, w)?;
            witness_ok &= &value == target && w.symbols().all(|s| bundle.x.contains(&s));
        }
    }
    checks.push(Check::new(
        "witnesses_evaluate",
        witness_ok,
        format!("{} witness words", bundle.y.len() * bundle.x.len()),
    ));

    let mut replayed = 0;
    let mut failures = Vec::new();
    for ct in &bundle.traces {
        let shape = ct.trace.start == [Letter::pos(ct.s), Letter::pos(ct.t), Letter::neg(ct.s)]
            && ct.trace.end.len() == 1
            && !ct.trace.end[0].inverted;
        let sound = shape && {
            let lhs = out_eval(&real, &Word::from(ct.trace.start.clone()))?;
            lhs == real.assignment[&ct.trace.end[0].symbol]
        };
        match check_trace(&ct.trace, &bundle.slots, &table) {
            Ok(true) if sound => replayed += 1,
            Ok(_) => failures.push(format!("({}, {})", gs.symbol_name(ct.s), gs.symbol_name(ct.t))),
            Err(e) => failures.push(format!("({}, {}): {e}", gs.symbol_name(ct.s), gs.symbol_name(ct.t))),
        }
    }
    checks.push(Check::new(
        "traces_replay",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{replayed}/{} traces replay", bundle.traces.len())
        } else {
            format!("failed: {}", failures.join("; "))
        },
    ));

    let pairs: BTreeSet<(SymbolRef, SymbolRef)> = bundle.traces.iter().map(|c| (c.s, c.t)).collect();
    let n = gs.symbol_count();
    checks.push(Check::new(
        "traces_complete",
        pairs.len() == n * n,
        format!("{} of {} ordered pairs", pairs.len(), n * n),
    ));
    Ok(checks)
}

fn out_eval(real: &Realization, w: &Word) -> Result<Permutation> {
    let mut acc = Permutation::identity(real.order());
    for l in w.letters() {
        let p = real.assignment.get(&l.symbol).ok_or(Error::SymbolOutOfRange(l.symbol))?;
        acc = if l.inverted { acc.then(&p.inverse()) } else { acc.then(p) };
    }
    Ok(acc)
}
