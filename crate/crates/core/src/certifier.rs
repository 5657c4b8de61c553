//! Certified lower bounds on the intersection numbers of graded levels.
//!
//! Let `{C_n}` be a graded fragmentation and `K = K_{n+2}` the antichain
//! bound of level `n + 2`. Every sequence `c_1, .., c_m` in `C_n` with
//! `m >= 100 K²` has more than `k` terms sharing an atom, where `k` is the
//! largest integer with `k / m < 1 / (30 K²)`. Hence
//! `kappa(C_n) >= 1 / (30 K²)`.
//!
//! The argument is by contradiction and this module replays it step by step
//! ([`replay_proof`]): group the atoms by the set `I` of terms containing
//! them (the cells `b_I`), choose an expander family over `p` points with a
//! one-to-one choice function `f_I` for every occurring `I`, and split each
//! `c_i` into the three pieces
//!
//! ```text
//! a_ij = ⋃ { b_I : i ∈ I, f_I(i) = j },   j ∈ A_i.
//! ```
//!
//! For a fixed `j` the pieces are pairwise disjoint, so at most `K` of them
//! lie in `C_{n+2}`; since `pK < m` some `c_i` has all three pieces outside
//! `C_{n+2}`, and gradedness then forces `c_i ∉ C_n`. On a graded input the
//! large intersection is always found first; the piece machinery only runs
//! when it is not, and then it locates the split where gradedness fails.
//!
//! [`certify_level`] computes the exact intersection number by linear
//! programming and compares it with the bound; [`certify_fragmentation`]
//! does so for every level and combines the level measures into a strictly
//! positive measure.

use std::collections::BTreeMap;

use num::{BigInt, Signed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AtomSpace, Collection, Element};
use crate::error::{Error, Result};
use crate::expander::{build_expander, choice_function, ExpanderFamily};
use crate::fragmentation::{
    check_fragmentation, check_graded, first_bad_split, max_antichain, split_budget, Fragmentation,
    GradedViolation, DEFAULT_SPLIT_BUDGET,
};
use crate::intersection::kappa_of_sequence;
use crate::kelley::{combine_measures, measure_from_collection, Measure};
use crate::rational::{self, Rational};

/// Constants of the counting argument for antichain bound `K` and sequence
/// length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrParameters {
    /// `K`, the antichain bound of level `n + 2`.
    pub antichain: usize,
    /// `m`, the sequence length.
    pub length: usize,
    /// `k`: largest integer with `k · 30K² < m`.
    pub k: usize,
    /// `p`: largest integer with `p · K < m`.
    pub p: usize,
}

impl KrParameters {
    /// `1 / (30 K²)`.
    pub fn bound(&self) -> Rational {
        level_bound(self.antichain)
    }
}

/// `1 / (30 K²)`.
pub fn level_bound(antichain: usize) -> Rational {
    let k = antichain as i64;
    rational::ratio(1, 30 * k * k)
}

pub fn select_parameters(antichain: usize, length: usize) -> Result<KrParameters> {
    if antichain == 0 {
        return Err(Error::Input("antichain bound K must be at least 1".into()));
    }
    let (kk, m) = (antichain as u128, length as u128);
    if m < 100 * kk * kk {
        return Err(Error::Contract(format!(
            "sequence length {length} is below 100 K² = {}",
            100 * kk * kk
        )));
    }
    let q = 30 * kk * kk;
    let k = (m - 1) / q;
    let p = (m - 1) / kk;
    let checks = [
        (k >= 3, "k >= 3"),
        (
            k * q < m && (k + 1) * q >= m,
            "k is the largest with k/m < 1/(30K²)",
        ),
        (p >= k, "p >= k"),
        (
            p * kk < m && (p + 1) * kk >= m,
            "p is the largest with pK < m",
        ),
        (p * p >= 15 * m * k, "p² >= 15mk"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::InternalContradiction(format!(
            "parameter check failed: {what}"
        )));
    }
    Ok(KrParameters {
        antichain,
        length,
        k: k as usize,
        p: p as usize,
    })
}

/// The deepest atom of a sequence and the terms containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub indices: Vec<usize>,
    pub atom: usize,
    /// `|J| / m`.
    pub ratio: Rational,
    pub meets_bound: bool,
}

pub fn witness_intersection(seq: &[Element], bound: &Rational) -> Result<IntersectionWitness> {
    let score = kappa_of_sequence(seq)?;
    Ok(IntersectionWitness {
        meets_bound: score.kappa >= *bound,
        indices: score.indices,
        atom: score.witness_atom,
        ratio: score.kappa,
    })
}

/// One nonzero cell `b_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// `I`, sorted.
    pub signature: Vec<usize>,
    pub atoms: Element,
}

/// The nonzero cells `b_I` of a sequence, one per occurring signature, in
/// lexicographic order of signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignaturePartition {
    pub space: AtomSpace,
    pub length: usize,
    pub cells: Vec<Cell>,
}

impl SignaturePartition {
    /// `⋃ { b_I : i ∈ I }`.
    pub fn reconstruct(&self, i: usize) -> Element {
        self.cells
            .iter()
            .filter(|c| c.signature.binary_search(&i).is_ok())
            .fold(self.space.zero(), |acc, c| &acc | &c.atoms)
    }

    /// Checks that the cells are pairwise disjoint, cover the unit, and
    /// rebuild every term of `seq`.
    pub fn check_identities(&self, seq: &[Element]) -> Result<()> {
        let mut union = self.space.zero();
        for cell in &self.cells {
            if cell.atoms.intersects(&union) {
                return Err(Error::InternalContradiction(format!(
                    "cell {:?} meets an earlier cell",
                    cell.signature
                )));
            }
            union = &union | &cell.atoms;
        }
        if !union.is_unit() {
            return Err(Error::InternalContradiction(
                "cells do not cover the unit".into(),
            ));
        }
        for (i, c) in seq.iter().enumerate() {
            if self.reconstruct(i) != *c {
                return Err(Error::InternalContradiction(format!(
                    "cells do not rebuild term {i}"
                )));
            }
        }
        Ok(())
    }
}

/// Groups atoms by `I(x) = {i : x ∈ c_i}`. Only occurring signatures are
/// materialized, so there are at most `atom_count` cells.
pub fn build_signature_partition(seq: &[Element]) -> Result<SignaturePartition> {
    let first = seq.first().ok_or(Error::Empty("sequence"))?;
    let space = first.space();
    let mut signature: Vec<Vec<usize>> = vec![Vec::new(); space.atom_count()];
    for (i, c) in seq.iter().enumerate() {
        if c.space() != space {
            return Err(Error::mismatch(space, c.space()));
        }
        for x in c.atoms() {
            signature[x].push(i);
        }
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (x, sig) in signature.into_iter().enumerate() {
        groups.entry(sig).or_default().push(x);
    }
    let cells = groups
        .into_iter()
        .map(|(sig, atoms)| {
            Ok(Cell {
                signature: sig,
                atoms: Element::from_atoms(space, &atoms)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SignaturePartition {
        space,
        length: seq.len(),
        cells,
    })
}

/// The piece table and the step where the contradiction surfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceStage {
    pub expander: ExpanderFamily,
    /// `pieces[i][t] = a_{i, A_i[t]}`.
    pub pieces: Vec<[Element; 3]>,
    /// Largest number of pieces `a_ij`, over columns `j`, lying in
    /// `C_{n+2}`; at most `K`.
    pub max_column_hits: usize,
    /// Least `i` whose three pieces all lie outside `C_{n+2}`.
    pub culprit: usize,
    /// The split of `c_culprit` (or of the union of its last two pieces)
    /// with neither part in the next level.
    pub failure: GradedViolation,
}

impl PieceStage {
    /// `a_ij`, zero when `j ∉ A_i`.
    pub fn piece(&self, i: usize, j: usize) -> Option<&Element> {
        let set = self.expander.set(i);
        set.iter().position(|&x| x == j).map(|t| &self.pieces[i][t])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome {
    /// More than `k` terms share `atom`; the bound holds for this sequence.
    LargeIntersection,
    /// No large intersection: the input cannot be graded, and the piece
    /// stage says where.
    NotGraded(Box<PieceStage>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub level: usize,
    pub parameters: KrParameters,
    /// Levels appended as copies of the full level to reach `n + 2`.
    pub extended_levels: usize,
    pub witness: IntersectionWitness,
    pub partition: SignaturePartition,
    pub outcome: TraceOutcome,
}

/// Runs the counting argument on one sequence of members of `C_n`.
///
/// Gradedness of `f` is taken on trust, as the argument does; when it is
/// false the trace ends in [`TraceOutcome::NotGraded`] with the failing
/// split. Every other proof step is asserted and reported as
/// [`Error::InternalContradiction`] if it fails.
pub fn replay_proof(
    f: &Fragmentation,
    level: usize,
    seq: &[Element],
    seed: u64,
) -> Result<ProofTrace> {
    if level == 0 {
        return Err(Error::Input("levels are numbered from 1".into()));
    }
    let (ext, extended_levels) = f.extended_to(level + 2);
    check_fragmentation(&ext)
        .map_err(|v| Error::Contract(format!("not a fragmentation: {v:?}")))?;
    let c_n = ext.level(level);
    if seq.is_empty() {
        return Err(Error::Empty("sequence"));
    }
    for (i, c) in seq.iter().enumerate() {
        if c.space() != f.space() {
            return Err(Error::mismatch(f.space(), c.space()));
        }
        if !c_n.contains(c) {
            return Err(Error::Contract(format!(
                "term {i} = {c} is not in level {level}"
            )));
        }
    }
    let antichain = max_antichain(&ext, level + 2)?.size;
    let parameters = select_parameters(antichain, seq.len())?;
    let witness = witness_intersection(seq, &parameters.bound())?;
    let partition = build_signature_partition(seq)?;
    partition.check_identities(seq)?;

    let outcome = if witness.indices.len() > parameters.k {
        TraceOutcome::LargeIntersection
    } else {
        TraceOutcome::NotGraded(Box::new(piece_stage(
            &ext,
            level,
            seq,
            &parameters,
            &partition,
            seed,
        )?))
    };
    Ok(ProofTrace {
        level,
        parameters,
        extended_levels,
        witness,
        partition,
        outcome,
    })
}

fn piece_stage(
    f: &Fragmentation,
    level: usize,
    seq: &[Element],
    params: &KrParameters,
    partition: &SignaturePartition,
    seed: u64,
) -> Result<PieceStage> {
    let space = f.space();
    let m = seq.len();
    let expander = build_expander(m, params.p, params.k, seed)?;
    let mut pieces: Vec<[Element; 3]> = (0..m)
        .map(|_| [space.zero(), space.zero(), space.zero()])
        .collect();
    for cell in &partition.cells {
        if cell.signature.is_empty() {
            continue;
        }
        if cell.signature.len() > params.k {
            return Err(Error::InternalContradiction(format!(
                "cell {:?} is larger than k = {}",
                cell.signature, params.k
            )));
        }
        let choice = choice_function(&expander, &cell.signature)
            .map_err(|e| Error::InternalContradiction(format!("choice function: {e}")))?;
        for (&i, &j) in choice.indices.iter().zip(&choice.values) {
            let t = expander
                .set(i)
                .iter()
                .position(|&x| x == j)
                .expect("choice lies in A_i");
            pieces[i][t] = &pieces[i][t] | &cell.atoms;
        }
    }

    // c_i = a_{i,j1} ∪ a_{i,j2} ∪ a_{i,j3}
    for (i, c) in seq.iter().enumerate() {
        let u = &(&pieces[i][0] | &pieces[i][1]) | &pieces[i][2];
        if u != *c {
            return Err(Error::InternalContradiction(format!(
                "pieces of term {i} do not rebuild it"
            )));
        }
    }

    // columns are pairwise disjoint
    let mut columns: Vec<Element> = vec![space.zero(); params.p];
    for (i, row) in pieces.iter().enumerate() {
        for (t, &j) in expander.set(i).iter().enumerate() {
            if row[t].intersects(&columns[j]) {
                return Err(Error::InternalContradiction(format!(
                    "piece a_({i},{j}) meets another piece of column {j}"
                )));
            }
            columns[j] = &columns[j] | &row[t];
        }
    }

    let top = f.level(level + 2);
    let mut hits = vec![0usize; params.p];
    for (i, row) in pieces.iter().enumerate() {
        for (t, &j) in expander.set(i).iter().enumerate() {
            if top.contains(&row[t]) {
                hits[j] += 1;
            }
        }
    }
    let max_column_hits = hits.iter().copied().max().unwrap_or(0);
    if max_column_hits > params.antichain {
        return Err(Error::InternalContradiction(format!(
            "a column has {max_column_hits} pieces in level {}, above K = {}",
            level + 2,
            params.antichain
        )));
    }
    if params.p * params.antichain >= m {
        return Err(Error::InternalContradiction("pK >= m".into()));
    }
    let culprit = (0..m)
        .find(|&i| pieces[i].iter().all(|a| !top.contains(a)))
        .ok_or_else(|| {
            Error::InternalContradiction("every term has a piece in the top level".into())
        })?;

    // graded descent: c = a1 ∪ (a2 ∪ a3) at level n, then a2 ∪ a3 at n + 1
    let [a1, a2, a3] = &pieces[culprit];
    let next = f.level(level + 1);
    let tail = a2 | a3;
    let failure = if next.contains(a1) {
        return Err(Error::InternalContradiction(format!(
            "piece of term {culprit} lies in level {} but not in level {}",
            level + 1,
            level + 2
        )));
    } else if !next.contains(&tail) {
        GradedViolation {
            level,
            whole: seq[culprit].clone(),
            part: a1.clone(),
        }
    } else {
        GradedViolation {
            level: level + 1,
            whole: tail,
            part: a2.clone(),
        }
    };
    Ok(PieceStage {
        expander,
        pieces,
        max_column_hits,
        culprit,
        failure,
    })
}

/// `m` members of `C_n` drawn uniformly from its minimal elements.
pub fn sample_level_sequence(
    f: &Fragmentation,
    level: usize,
    length: usize,
    seed: u64,
) -> Result<Vec<Element>> {
    if level == 0 || level > f.depth() {
        return Err(Error::Input(format!("level {level} does not exist")));
    }
    let pool = f.level(level).minimal_elements();
    if pool.is_empty() {
        return Err(Error::Empty("level"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..length)
        .map(|_| pool.choose(&mut rng).expect("nonempty").clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCertificate {
    pub level: usize,
    /// Exact intersection number of `C_n`.
    pub kappa: Rational,
    /// `K_{n+2}`.
    pub antichain: usize,
    /// `K_{n+1}`, reported for comparison.
    pub antichain_next: usize,
    /// `1 / (30 K_{n+2}²)`.
    pub bound: Rational,
    /// A measure with `m(c) >= kappa` on `C_n`.
    pub measure: Measure,
    pub extended_levels: usize,
}

fn ensure_graded_between(f: &Fragmentation, lower: usize) -> Result<()> {
    let lo = f.level(lower);
    let cost = split_budget(&lo.minimal_elements());
    if cost > DEFAULT_SPLIT_BUDGET {
        return Err(Error::TooLarge {
            what: "gradedness split enumeration",
            size: cost,
            cap: DEFAULT_SPLIT_BUDGET,
        });
    }
    if let Some((whole, part)) = first_bad_split(lo, f.level(lower + 1)) {
        return Err(Error::NotGraded {
            level: lower,
            whole: whole.to_atoms(),
            part: part.to_atoms(),
        });
    }
    Ok(())
}

/// Certifies `kappa(C_n) >= 1 / (30 K_{n+2}²)` by exact linear programming.
///
/// Levels missing above `n` are filled with the full level. Gradedness of
/// levels `n` and `n + 1` is checked first.
pub fn certify_level(f: &Fragmentation, level: usize) -> Result<LevelCertificate> {
    if level == 0 || level > f.depth() {
        return Err(Error::Input(format!(
            "level {level} does not exist (depth {})",
            f.depth()
        )));
    }
    let (ext, extended_levels) = f.extended_to(level + 2);
    check_fragmentation(&ext)
        .map_err(|v| Error::Contract(format!("not a fragmentation: {v:?}")))?;
    ensure_graded_between(&ext, level)?;
    ensure_graded_between(&ext, level + 1)?;
    let antichain = max_antichain(&ext, level + 2)?.size;
    let antichain_next = max_antichain(&ext, level + 1)?.size;
    let collection = Collection::new(f.space(), ext.level(level).minimal_elements())?;
    let (measure, kappa) = measure_from_collection(&collection)?;
    let bound = level_bound(antichain);
    if kappa < bound {
        return Err(Error::Certification {
            level,
            kappa: rational::to_string(&kappa),
            bound: rational::to_string(&bound),
        });
    }
    Ok(LevelCertificate {
        level,
        kappa,
        antichain,
        antichain_next,
        bound,
        measure,
        extended_levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentationCertificate {
    pub levels: Vec<LevelCertificate>,
    /// Strictly positive measure combined from the level measures.
    pub measure: Measure,
}

/// Certifies every level and combines the level measures.
pub fn certify_fragmentation(f: &Fragmentation) -> Result<FragmentationCertificate> {
    check_fragmentation(f).map_err(|v| Error::Contract(format!("not a fragmentation: {v:?}")))?;
    if let Some(v) = check_graded(f)? {
        return Err(Error::NotGraded {
            level: v.level,
            whole: v.whole.to_atoms(),
            part: v.part.to_atoms(),
        });
    }
    let levels: Vec<LevelCertificate> = (1..=f.depth())
        .map(|n| certify_level(f, n))
        .collect::<Result<_>>()?;
    let pairs: Vec<(Measure, Rational)> = levels
        .iter()
        .map(|c| (c.measure.clone(), c.kappa.clone()))
        .collect();
    let measure = combine_measures(&pairs, f)?;
    measure.check_axioms()?;
    Ok(FragmentationCertificate { levels, measure })
}

/// `|J| / m >= 1 / (30 K²)` as an exact comparison.
pub fn ratio_meets(len: usize, m: usize, antichain: usize) -> bool {
    let r = Rational::new(BigInt::from(len), BigInt::from(m));
    !(r - level_bound(antichain)).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragmentation::{from_measure, Level};
    use crate::rational::{int, ratio};

    fn space(n: usize) -> AtomSpace {
        AtomSpace::new(n).unwrap()
    }

    fn el(s: AtomSpace, atoms: &[usize]) -> Element {
        Element::from_atoms(s, atoms).unwrap()
    }

    #[test]
    fn parameter_examples() {
        let p = select_parameters(1, 100).unwrap();
        assert_eq!((p.k, p.p), (3, 99));
        let p = select_parameters(2, 400).unwrap();
        assert_eq!((p.k, p.p), (3, 199));
        assert_eq!(p.bound(), ratio(1, 120));
        assert!(matches!(select_parameters(1, 99), Err(Error::Contract(_))));
        assert!(select_parameters(0, 100).is_err());
    }

    #[test]
    fn witness_examples() {
        let s = space(3);
        let all_unit = vec![s.unit(); 5];
        let w = witness_intersection(&all_unit, &ratio(1, 30)).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.ratio, int(1));
        let disjoint = vec![el(s, &[0]), el(s, &[1]), el(s, &[2])];
        let w = witness_intersection(&disjoint, &ratio(1, 2)).unwrap();
        assert_eq!(w.indices.len(), 1);
        assert!(!w.meets_bound);
        assert!(ratio_meets(4, 100, 1));
        assert!(!ratio_meets(3, 100, 1));
    }

    #[test]
    fn partition_examples() {
        let s = space(2);
        let seq = vec![el(s, &[0]), el(s, &[0, 1])];
        let p = build_signature_partition(&seq).unwrap();
        assert_eq!(
            p.cells,
            vec![
                Cell {
                    signature: vec![0, 1],
                    atoms: el(s, &[0])
                },
                Cell {
                    signature: vec![1],
                    atoms: el(s, &[1])
                },
            ]
        );
        p.check_identities(&seq).unwrap();

        let s4 = space(4);
        let same = vec![el(s4, &[1, 2]); 6];
        let p = build_signature_partition(&same).unwrap();
        assert_eq!(p.cells.len(), 2);
        p.check_identities(&same).unwrap();
    }

    #[test]
    fn replay_closes_on_constant_sequence() {
        let s = space(3);
        let f = Fragmentation::new(s, vec![Level::full(s)]).unwrap();
        let seq = vec![s.unit(); 900];
        let t = replay_proof(&f, 1, &seq, 0).unwrap();
        assert_eq!(t.parameters.antichain, 3);
        assert_eq!(t.outcome, TraceOutcome::LargeIntersection);
        assert_eq!(t.witness.ratio, int(1));
        assert_eq!(t.extended_levels, 2);
    }

    #[test]
    fn replay_checks_membership_and_length() {
        let s = space(2);
        let f =
            Fragmentation::new(s, vec![Level::members(vec![s.unit()]), Level::full(s)]).unwrap();
        let outside = vec![el(s, &[0]); 400];
        assert!(matches!(
            replay_proof(&f, 1, &outside, 0),
            Err(Error::Contract(_))
        ));
        let short = vec![s.unit(); 10];
        assert!(matches!(
            replay_proof(&f, 1, &short, 0),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn certify_unit_level() {
        let s = space(3);
        let f =
            Fragmentation::new(s, vec![Level::members(vec![s.unit()]), Level::full(s)]).unwrap();
        let c = certify_level(&f, 1).unwrap();
        assert_eq!(c.kappa, int(1));
        assert!(c.antichain >= 1);
        assert!(c.bound <= ratio(1, 30));
    }

    #[test]
    fn certify_uniform_four_atoms_level_one() {
        let s = space(4);
        let f = from_measure(&Measure::uniform(s)).unwrap();
        let c = certify_level(&f, 1).unwrap();
        assert_eq!(c.antichain, 4);
        assert_eq!(c.bound, ratio(1, 480));
        assert!(c.kappa >= ratio(1, 480));
        // C_1 holds all sets with at least two atoms; its minimal members are
        // the six pairs, whose intersection number is 1/2
        assert_eq!(c.kappa, ratio(1, 2));
    }

    #[test]
    fn certify_full_level_on_two_atoms() {
        let s = space(2);
        let f = Fragmentation::new(s, vec![Level::full(s)]).unwrap();
        let cert = certify_fragmentation(&f).unwrap();
        assert_eq!(cert.levels[0].kappa, ratio(1, 2));
        assert_eq!(cert.measure, Measure::uniform(s));
    }

    #[test]
    fn certify_rejects_non_graded() {
        let s = space(2);
        let f = Fragmentation::new(
            s,
            vec![
                Level::members(vec![s.unit()]),
                Level::members(vec![s.unit()]),
                Level::full(s),
            ],
        )
        .unwrap();
        assert!(matches!(
            certify_fragmentation(&f),
            Err(Error::NotGraded { level: 1, .. })
        ));
        assert!(matches!(
            certify_level(&f, 1),
            Err(Error::NotGraded { level: 1, .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = space(5);
        let f = from_measure(&Measure::uniform(s)).unwrap();
        let a = sample_level_sequence(&f, 1, 50, 3).unwrap();
        let b = sample_level_sequence(&f, 1, 50, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| f.level(1).contains(c)));
    }
}
