//! Fragmentations of a finite set algebra.
//!
//! A fragmentation is an increasing list of levels `C_1 ⊆ C_2 ⊆ .. ⊆ C_N`
//! of nonzero elements. Every level is upward closed and the levels together
//! cover all nonzero elements. It is *graded* when, for every `n < N`,
//! whenever `a ∪ b ∈ C_n` one of `a`, `b` lies in `C_{n+1}`; and each level
//! carries an antichain bound `K_n`, the largest number of pairwise disjoint
//! members.
//!
//! # Reductions used by the checks
//!
//! * Upward closure only needs one-atom steps: a level is upward closed iff
//!   `a ∪ {x}` is a member for every member `a` and atom `x`.
//! * Gradedness only needs disjoint splits of minimal members. If
//!   `c = a ∪ b` then `c ⊇ c0` for a minimal `c0`, and a part of the split
//!   `(a ∩ c0, c0 − a)` of `c0` lying in the next level forces `a` or `b`
//!   into it by upward closure.
//! * A maximum antichain can be taken among minimal members, since shrinking
//!   an element keeps a family pairwise disjoint.
//!
//! Levels come in two representations: an explicit member list, or the
//! upward closure of a list of generators. The second one makes
//! fragmentations of wide algebras usable without enumerating them.

use indexmap::IndexSet;
use num::{One, Signed, Zero};

use crate::algebra::{
    enumerate_nonzero, minimal_indices, AtomSpace, Element, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::kelley::Measure;
use crate::rational::{self, Rational};

/// Default limit on the number of splits examined by the gradedness checks.
pub const DEFAULT_SPLIT_BUDGET: u128 = 1 << 26;

/// One level `C_n` of a fragmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level {
    /// Explicit members in canonical order.
    Members(IndexSet<Element>),
    /// All elements above at least one generator. Generators are kept
    /// inclusion-minimal and in canonical order.
    UpClosure(Vec<Element>),
}

impl Level {
    pub fn members(mut elements: Vec<Element>) -> Level {
        elements.sort();
        elements.dedup();
        Level::Members(elements.into_iter().collect())
    }

    pub fn up_closure(generators: Vec<Element>) -> Level {
        let keep = minimal_indices(&generators);
        let mut gens: Vec<Element> = keep.into_iter().map(|i| generators[i].clone()).collect();
        gens.sort();
        Level::UpClosure(gens)
    }

    /// All nonzero elements.
    pub fn full(space: AtomSpace) -> Level {
        Level::UpClosure(space.singletons().collect())
    }

    pub fn contains(&self, a: &Element) -> bool {
        match self {
            Level::Members(set) => set.contains(a),
            Level::UpClosure(gens) => gens.iter().any(|g| g.is_subset(a)),
        }
    }

    /// Inclusion-minimal members, in canonical order.
    pub fn minimal_elements(&self) -> Vec<Element> {
        match self {
            Level::Members(set) => {
                let items: Vec<Element> = set.iter().cloned().collect();
                minimal_indices(&items)
                    .into_iter()
                    .map(|i| items[i].clone())
                    .collect()
            }
            Level::UpClosure(gens) => gens.clone(),
        }
    }

    /// Every member, enumerating the closure if needed.
    pub fn all_members(&self, space: AtomSpace) -> Result<Vec<Element>> {
        match self {
            Level::Members(set) => Ok(set.iter().cloned().collect()),
            Level::UpClosure(_) => Ok(enumerate_nonzero(space)?
                .into_iter()
                .filter(|e| self.contains(e))
                .collect()),
        }
    }

    fn generators(&self) -> Box<dyn Iterator<Item = &Element> + '_> {
        match self {
            Level::Members(set) => Box::new(set.iter()),
            Level::UpClosure(gens) => Box::new(gens.iter()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragmentation {
    space: AtomSpace,
    levels: Vec<Level>,
}

impl Fragmentation {
    /// Wraps the levels without checking the fragmentation axioms; see
    /// [`check_fragmentation`].
    pub fn new(space: AtomSpace, levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Empty("fragmentation"));
        }
        for level in &levels {
            if let Some(e) = level.generators().find(|e| e.space() != space) {
                return Err(Error::mismatch(space, e.space()));
            }
        }
        Ok(Fragmentation { space, levels })
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    /// Number of levels `N`.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `C_n`, counting from one.
    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n - 1]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Appends copies of the full level until there are at least `depth`
    /// levels. Returns the extended fragmentation and the number of levels
    /// added.
    pub fn extended_to(&self, depth: usize) -> (Fragmentation, usize) {
        let mut levels = self.levels.clone();
        let added = depth.saturating_sub(levels.len());
        levels.extend(std::iter::repeat_n(Level::full(self.space), added));
        (
            Fragmentation {
                space: self.space,
                levels,
            },
            added,
        )
    }

    /// Lowest atom whose singleton lies in no level.
    pub fn uncovered_atom(&self) -> Option<usize> {
        self.space
            .singletons()
            .position(|x| !self.levels.iter().any(|l| l.contains(&x)))
    }
}

/// First failure found by [`check_fragmentation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FragmentationViolation {
    ZeroMember {
        level: usize,
    },
    /// `element ∈ C_level` but `element ∪ {atom}` is not.
    NotUpwardClosed {
        level: usize,
        element: Element,
        atom: usize,
    },
    /// `element ∈ C_level` but not in `C_{level+1}`.
    NotNested {
        level: usize,
        element: Element,
    },
    /// `{atom}` lies in no level.
    NotCovering {
        atom: usize,
    },
}

/// Checks nesting, upward closure and covering.
pub fn check_fragmentation(f: &Fragmentation) -> Result<(), FragmentationViolation> {
    for (i, level) in f.levels.iter().enumerate() {
        let n = i + 1;
        if level.generators().any(|e| e.is_zero()) {
            return Err(FragmentationViolation::ZeroMember { level: n });
        }
        if let Level::Members(set) = level {
            for a in set {
                for x in (0..f.space.atom_count()).filter(|&x| !a.contains(x)) {
                    let up = a | &f.space.singleton(x).expect("atom in range");
                    if !set.contains(&up) {
                        return Err(FragmentationViolation::NotUpwardClosed {
                            level: n,
                            element: a.clone(),
                            atom: x,
                        });
                    }
                }
            }
        }
    }
    for (i, pair) in f.levels.windows(2).enumerate() {
        // the upper level is upward closed, so generators of the lower suffice
        if let Some(e) = pair[0].generators().find(|e| !pair[1].contains(e)) {
            return Err(FragmentationViolation::NotNested {
                level: i + 1,
                element: e.clone(),
            });
        }
    }
    let top = f.levels.last().expect("nonempty");
    if let Some(atom) = f.space.singletons().position(|x| !top.contains(&x)) {
        return Err(FragmentationViolation::NotCovering { atom });
    }
    Ok(())
}

/// A split `whole = part ∪ (whole − part)` of a member of `C_level` with
/// neither part in `C_{level+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedViolation {
    pub level: usize,
    pub whole: Element,
    pub part: Element,
}

impl GradedViolation {
    pub fn rest(&self) -> Element {
        &self.whole - &self.part
    }
}

pub(crate) fn split_budget(minimal: &[Element]) -> u128 {
    minimal
        .iter()
        .map(|c| 1u128.checked_shl(c.len() as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// First minimal `c` of `lower` and proper nonzero `part` such that neither
/// `part` nor `c − part` lies in `upper`.
pub(crate) fn first_bad_split(lower: &Level, upper: &Level) -> Option<(Element, Element)> {
    for c in lower.minimal_elements() {
        for part in c.subsets() {
            if part.is_zero() || part == c {
                continue;
            }
            let rest = &c - &part;
            if !upper.contains(&part) && !upper.contains(&rest) {
                return Some((c.clone(), part));
            }
        }
    }
    None
}

/// Checks gradedness. `Ok(None)` means graded; the top level is exempt.
///
/// Errors when `f` is not a valid fragmentation or when the number of
/// splits to examine exceeds [`DEFAULT_SPLIT_BUDGET`].
pub fn check_graded(f: &Fragmentation) -> Result<Option<GradedViolation>> {
    check_graded_with_budget(f, DEFAULT_SPLIT_BUDGET)
}

pub fn check_graded_with_budget(
    f: &Fragmentation,
    budget: u128,
) -> Result<Option<GradedViolation>> {
    check_fragmentation(f).map_err(|v| Error::Contract(format!("not a fragmentation: {v:?}")))?;
    let minimal: Vec<Vec<Element>> = f.levels[..f.depth() - 1]
        .iter()
        .map(Level::minimal_elements)
        .collect();
    let total = minimal
        .iter()
        .map(|m| split_budget(m))
        .fold(0u128, |a, b| a.saturating_add(b));
    if total > budget {
        return Err(Error::TooLarge {
            what: "gradedness split enumeration",
            size: total,
            cap: budget,
        });
    }
    for n in 1..f.depth() {
        if let Some((whole, part)) = first_bad_split(f.level(n), f.level(n + 1)) {
            return Ok(Some(GradedViolation {
                level: n,
                whole,
                part,
            }));
        }
    }
    Ok(None)
}

/// A largest pairwise disjoint family inside one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainReport {
    pub level: usize,
    pub size: usize,
    pub witness: Vec<Element>,
}

/// Exact maximum antichain of `C_n` by branch and bound.
pub fn max_antichain(f: &Fragmentation, n: usize) -> Result<AntichainReport> {
    if n == 0 || n > f.depth() {
        return Err(Error::Input(format!(
            "level {n} does not exist (depth {})",
            f.depth()
        )));
    }
    let candidates: Vec<Element> = f
        .level(n)
        .minimal_elements()
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    let witness = maximum_disjoint_family(f.space, &candidates);
    Ok(AntichainReport {
        level: n,
        size: witness.len(),
        witness,
    })
}

/// Maximum set packing over `candidates`.
pub(crate) fn maximum_disjoint_family(space: AtomSpace, candidates: &[Element]) -> Vec<Element> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    // greedy incumbent
    let mut used = space.zero();
    let mut best = Vec::new();
    for &i in &order {
        if candidates[i].is_disjoint(&used) {
            used = &used | &candidates[i];
            best.push(i);
        }
    }
    let mut search = Packing {
        candidates,
        best,
        chosen: Vec::new(),
    };
    let all: Vec<usize> = order;
    search.branch(space.unit(), &all);
    let mut out: Vec<Element> = search.best.iter().map(|&i| candidates[i].clone()).collect();
    out.sort();
    out
}

struct Packing<'a> {
    candidates: &'a [Element],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Packing<'_> {
    fn branch(&mut self, avail: Element, pool: &[usize]) {
        let live: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&i| self.candidates[i].is_subset(&avail))
            .collect();
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if live.is_empty() {
            return;
        }
        let covered = live
            .iter()
            .fold(avail.space().zero(), |acc, &i| &acc | &self.candidates[i]);
        let smallest = live
            .iter()
            .map(|&i| self.candidates[i].len())
            .min()
            .expect("nonempty");
        let bound = live.len().min(covered.len() / smallest);
        if self.chosen.len() + bound <= self.best.len() {
            return;
        }
        let x = covered.first_atom().expect("nonzero candidates");
        for &i in live.iter().filter(|&&i| self.candidates[i].contains(x)) {
            self.chosen.push(i);
            let rest = &avail - &self.candidates[i];
            self.branch(rest, &live);
            self.chosen.pop();
        }
        let without_x = &avail - &avail.space().singleton(x).expect("atom in range");
        self.branch(without_x, &live);
    }
}

/// Levels `{a : value(a) >= 2^-n}` for `n = 1..N`, with `N` the least index
/// whose level is everything.
fn threshold_levels(
    space: AtomSpace,
    value: impl Fn(&Element) -> Rational,
) -> Result<Fragmentation> {
    let all = enumerate_nonzero(space)?;
    let values: Vec<Rational> = all.iter().map(&value).collect();
    let least = values.iter().min().expect("nonempty space").clone();
    if !least.is_positive() {
        return Err(Error::Input("set function is not strictly positive".into()));
    }
    let mut levels = Vec::new();
    let mut n = 1u32;
    loop {
        let threshold = rational::pow2_inv(n);
        let members: Vec<Element> = all
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v >= threshold)
            .map(|(e, _)| e.clone())
            .collect();
        levels.push(Level::Members(members.into_iter().collect()));
        if least >= threshold {
            break;
        }
        n += 1;
    }
    Fragmentation::new(space, levels)
}

/// Threshold fragmentation of a strictly positive measure.
pub fn from_measure(m: &Measure) -> Result<Fragmentation> {
    if !m.is_strictly_positive() {
        return Err(Error::Input("measure is not strictly positive".into()));
    }
    threshold_levels(m.space(), |a| m.eval_unchecked(a))
}

/// Threshold fragmentation of a submeasure.
pub fn from_submeasure(phi: &Submeasure) -> Result<Fragmentation> {
    threshold_levels(phi.space, |a| phi.value(a).clone())
}

/// Selects levels `n_1 = 1 < n_2 < ..` where `n_{i+1}` is the least `k > n_i`
/// such that every split of every member of `C_{n_i}` has a part in `C_k`.
/// Returns the graded fragmentation and the chosen indices (one-based).
pub fn extract_graded_subfragmentation(f: &Fragmentation) -> Result<(Fragmentation, Vec<usize>)> {
    check_fragmentation(f).map_err(|v| Error::Contract(format!("not a fragmentation: {v:?}")))?;
    let minimal: Vec<Element> = f.levels.iter().flat_map(Level::minimal_elements).collect();
    let total = split_budget(&minimal).saturating_mul(f.depth() as u128);
    if total > DEFAULT_SPLIT_BUDGET {
        return Err(Error::TooLarge {
            what: "gradedness split enumeration",
            size: total,
            cap: DEFAULT_SPLIT_BUDGET,
        });
    }
    // a valid fragmentation ends with the full level, which absorbs every split
    let mut chosen = vec![1];
    let mut current = 1;
    while current < f.depth() {
        let next = (current + 1..=f.depth())
            .find(|&k| first_bad_split(f.level(current), f.level(k)).is_none())
            .expect("the top level contains every nonzero element");
        chosen.push(next);
        current = next;
    }
    let levels = chosen.iter().map(|&n| f.level(n).clone()).collect();
    Ok((Fragmentation::new(f.space, levels)?, chosen))
}

/// A normalized, monotone, subadditive set function that vanishes only at
/// zero, stored as a full table indexed by element bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submeasure {
    space: AtomSpace,
    values: Vec<Rational>,
}

impl Submeasure {
    /// `values[mask]` is the value at the element with that bitmask.
    pub fn new(space: AtomSpace, values: Vec<Rational>) -> Result<Self> {
        space.ensure_enumerable(DEFAULT_ENUMERATION_CAP)?;
        let n = space.atom_count();
        let size = 1usize << n;
        if values.len() != size {
            return Err(Error::Input(format!(
                "expected {size} values, got {}",
                values.len()
            )));
        }
        let full = size - 1;
        let bad = |msg: String| Err(Error::Input(format!("not a submeasure: {msg}")));
        if !values[0].is_zero() {
            return bad("value at zero is not 0".into());
        }
        if !values[full].is_one() {
            return bad("value at the unit is not 1".into());
        }
        for a in 1..size {
            if !values[a].is_positive() {
                return bad(format!(
                    "value at {} is not positive",
                    space.mask_element(a as u64)
                ));
            }
            for x in 0..n {
                let up = a | 1 << x;
                if values[a] > values[up] {
                    return bad(format!("not monotone at {}", space.mask_element(a as u64)));
                }
            }
        }
        // with monotonicity, disjoint pairs suffice for subadditivity
        for a in 1..size {
            let rest = full & !a;
            let mut b = rest;
            while b != 0 {
                if values[a | b] > &values[a] + &values[b] {
                    return bad(format!(
                        "not subadditive at {} and {}",
                        space.mask_element(a as u64),
                        space.mask_element(b as u64)
                    ));
                }
                b = (b - 1) & rest;
            }
        }
        Ok(Submeasure { space, values })
    }

    /// Pointwise maximum of measures.
    pub fn max_of(measures: &[Measure]) -> Result<Self> {
        let first = measures.first().ok_or(Error::Empty("measures"))?;
        let space = first.space();
        space.ensure_enumerable(DEFAULT_ENUMERATION_CAP)?;
        let values = (0..1u64 << space.atom_count())
            .map(|mask| {
                let e = space.mask_element(mask);
                measures
                    .iter()
                    .map(|m| m.eval(&e))
                    .collect::<Result<Vec<_>>>()
                    .map(|v| v.into_iter().max().expect("nonempty"))
            })
            .collect::<Result<Vec<_>>>()?;
        Submeasure::new(space, values)
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    pub fn value(&self, a: &Element) -> &Rational {
        &self.values[a.mask() as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}
