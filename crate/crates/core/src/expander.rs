//! Indexed families of three-point sets with strict expansion, and the
//! injective choice functions they admit.
//!
//! A family `A_0, .., A_{m-1}` of 3-subsets of `{0, .., p-1}` *expands up to
//! `k`* when every index set `I` with `|I| <= k` satisfies
//! `|⋃_{i∈I} A_i| > |I|`. The strict inequality is more than Hall's
//! condition needs, so every such `I` has a system of distinct
//! representatives: an injective `f_I` with `f_I(i) ∈ A_i`.
//!
//! Random families expand with positive probability once
//! `p/k >= 15 m/p`; [`build_expander`] samples and certifies them.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AtomSpace, Element};
use crate::error::{Error, Result};

pub const DEFAULT_RETRY_CAP: usize = 1000;

/// Default cap on `sum_{j<=k} C(m, j)` for [`verify_expansion`].
pub const DEFAULT_VERIFY_BUDGET: u128 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpanderFamily {
    m: usize,
    p: usize,
    k: usize,
    sets: Vec<[usize; 3]>,
}

impl ExpanderFamily {
    /// Each set must have three distinct points below `p`; they are stored
    /// sorted.
    pub fn new(m: usize, p: usize, k: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if sets.len() != m {
            return Err(Error::Input(format!(
                "expected {m} sets, got {}",
                sets.len()
            )));
        }
        let mut sorted = Vec::with_capacity(m);
        for (i, set) in sets.into_iter().enumerate() {
            let mut s = set;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::Input(format!("set {i} has a repeated point")));
            }
            if s[2] >= p {
                return Err(Error::Input(format!("set {i} has a point outside 0..{p}")));
            }
            sorted.push(s);
        }
        Ok(ExpanderFamily {
            m,
            p,
            k,
            sets: sorted,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> [usize; 3] {
        self.sets[i]
    }
}

/// `3 <= k <= p` and `p/k >= 15 m/p`, compared as `p² >= 15 m k`.
///
/// `p <= m` is not required: extra points only make expansion easier, and
/// the tight instance `(20, 30, 3)` has `p > m`.
pub fn check_preconditions(m: usize, p: usize, k: usize) -> bool {
    let (m, p, k) = (m as u128, p as u128, k as u128);
    3 <= k && k <= p && p * p >= 15 * m * k
}

pub fn build_expander(m: usize, p: usize, k: usize, seed: u64) -> Result<ExpanderFamily> {
    build_expander_with_cap(m, p, k, seed, DEFAULT_RETRY_CAP)
}

/// Samples independent uniform 3-subsets until the family verifies, at most
/// `retry_cap` times. Deterministic in `seed`.
pub fn build_expander_with_cap(
    m: usize,
    p: usize,
    k: usize,
    seed: u64,
    retry_cap: usize,
) -> Result<ExpanderFamily> {
    if !check_preconditions(m, p, k) {
        return Err(Error::Input(format!(
            "parameters (m, p, k) = ({m}, {p}, {k}) violate 3 <= k <= p, p² >= 15mk"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_cap {
        let sets = (0..m)
            .map(|_| {
                let v = sample(&mut rng, p, 3);
                [v.index(0), v.index(1), v.index(2)]
            })
            .collect();
        let family = ExpanderFamily::new(m, p, k, sets)?;
        if verify_expansion(&family)?.violation.is_none() {
            return Ok(family);
        }
    }
    Err(Error::ConstructionFailed {
        attempts: retry_cap,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    /// Lexicographically least `I` with `|⋃ A_i| <= |I|`, if any.
    pub violation: Option<Vec<usize>>,
    /// Index sets whose union was actually computed.
    pub examined: u64,
    /// Index sets certified, including whole subtrees skipped because
    /// their union already exceeded `k`. On success this is
    /// `sum_{j=1..k} C(m, j)`.
    pub covered: u128,
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub(crate) fn subsets_up_to(m: usize, k: usize) -> u128 {
    (1..=k as u128)
        .map(|j| binomial(m as u128, j))
        .fold(0, u128::saturating_add)
}

pub fn verify_expansion(f: &ExpanderFamily) -> Result<ExpansionReport> {
    verify_expansion_with_budget(f, DEFAULT_VERIFY_BUDGET)
}

/// Exhaustive check of `|⋃_{i∈I} A_i| > |I|` for `1 <= |I| <= k`.
///
/// Index sets are visited depth first in lexicographic order. Once the union
/// of a prefix has more than `k` points no extension of size `<= k` can
/// violate, and the subtree is skipped.
pub fn verify_expansion_with_budget(f: &ExpanderFamily, budget: u128) -> Result<ExpansionReport> {
    let total = subsets_up_to(f.m, f.k);
    if total > budget {
        return Err(Error::TooLarge {
            what: "expansion check",
            size: total,
            cap: budget,
        });
    }
    let points = AtomSpace::new(f.p.max(1))?;
    let sets: Vec<Element> = f
        .sets
        .iter()
        .map(|s| Element::from_atoms(points, s))
        .collect::<Result<_>>()?;
    let mut walk = ExpansionWalk {
        sets: &sets,
        k: f.k,
        prefix: Vec::new(),
        examined: 0,
        covered: 0,
    };
    let violation = walk.descend(0, &points.zero());
    Ok(ExpansionReport {
        violation,
        examined: walk.examined,
        covered: walk.covered,
    })
}

struct ExpansionWalk<'a> {
    sets: &'a [Element],
    k: usize,
    prefix: Vec<usize>,
    examined: u64,
    covered: u128,
}

impl ExpansionWalk<'_> {
    fn descend(&mut self, start: usize, union: &Element) -> Option<Vec<usize>> {
        let m = self.sets.len();
        for i in start..m {
            self.prefix.push(i);
            let u = union | &self.sets[i];
            self.examined += 1;
            let size = self.prefix.len();
            if u.len() <= size {
                return Some(self.prefix.clone());
            }
            if u.len() > self.k {
                let room = (self.k - size) as u128;
                let tail = (m - 1 - i) as u128;
                self.covered += (0..=room).map(|j| binomial(tail, j)).sum::<u128>();
            } else {
                self.covered += 1;
                if size < self.k {
                    if let Some(v) = self.descend(i + 1, &u) {
                        return Some(v);
                    }
                }
            }
            self.prefix.pop();
        }
        None
    }
}

/// An injective `f_I` with `f_I(i) ∈ A_i`: `indices[t] ↦ values[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceFunction {
    pub indices: Vec<usize>,
    pub values: Vec<usize>,
}

impl ChoiceFunction {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.indices
            .iter()
            .position(|&j| j == i)
            .map(|t| self.values[t])
    }
}

/// Perfect matching of `indices` into the points, by augmenting paths.
///
/// On a verified family it exists for every `I` with `|I| <= k`. Otherwise
/// the error carries an index set `J ⊆ I` with fewer than `|J|` neighbours.
pub fn choice_function(f: &ExpanderFamily, indices: &[usize]) -> Result<ChoiceFunction> {
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != indices.len() {
        return Err(Error::Input("index set has repeats".into()));
    }
    if let Some(&bad) = idx.iter().find(|&&i| i >= f.m) {
        return Err(Error::Input(format!("index {bad} is outside 0..{}", f.m)));
    }
    if idx.len() > f.k {
        return Err(Error::Input(format!(
            "|I| = {} exceeds k = {}",
            idx.len(),
            f.k
        )));
    }
    let adj: Vec<[usize; 3]> = idx.iter().map(|&i| f.sets[i]).collect();
    let mut owner: Vec<Option<usize>> = vec![None; f.p];
    let mut matched: Vec<Option<usize>> = vec![None; idx.len()];
    for v in 0..idx.len() {
        let mut seen = vec![false; idx.len()];
        if !augment(v, &adj, &mut owner, &mut matched, &mut seen) {
            let deficient: Vec<usize> = (0..idx.len())
                .filter(|&u| seen[u])
                .map(|u| idx[u])
                .collect();
            let mut nbrs: Vec<usize> = (0..idx.len())
                .filter(|&u| seen[u])
                .flat_map(|u| adj[u])
                .collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            return Err(Error::HallViolation {
                deficient,
                neighbourhood: nbrs.len(),
            });
        }
    }
    Ok(ChoiceFunction {
        indices: idx,
        values: matched
            .into_iter()
            .map(|v| v.expect("perfect matching"))
            .collect(),
    })
}

fn augment(
    v: usize,
    adj: &[[usize; 3]],
    owner: &mut [Option<usize>],
    matched: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    seen[v] = true;
    if let Some(&j) = adj[v].iter().find(|&&j| owner[j].is_none()) {
        owner[j] = Some(v);
        matched[v] = Some(j);
        return true;
    }
    for &j in &adj[v] {
        let u = owner[j].expect("checked above");
        if !seen[u] && augment(u, adj, owner, matched, seen) {
            owner[j] = Some(v);
            matched[v] = Some(j);
            return true;
        }
    }
    false
}
