//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use measure_algebra::algebra::{AtomSpace, Element};
use measure_algebra::certifier::{
    build_signature_partition, certify_fragmentation, level_bound, replay_proof,
    sample_level_sequence, select_parameters, TraceOutcome,
};
use measure_algebra::expander::{
    build_expander_with_cap, choice_function, verify_expansion, DEFAULT_RETRY_CAP,
};
use measure_algebra::fragmentation::{
    check_fragmentation, check_graded, max_antichain, Fragmentation,
};
use measure_algebra::generate::{
    pair_incidence, random_collection, random_measure, random_submeasure_fragmentation,
    DEFAULT_WEIGHT_CAP,
};
use measure_algebra::intersection::{intersection_number, intersection_number_bruteforce};
use measure_algebra::kelley::measure_from_collection;
use measure_algebra::rational::{self, Rational};

const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn measure_fragmentations() -> Vec<Fragmentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    (0..100)
        .map(|i| {
            let atoms = 1 + i % 10;
            let space = AtomSpace::new(atoms).unwrap();
            let m = random_measure(space, DEFAULT_WEIGHT_CAP, &mut rng).unwrap();
            measure_algebra::fragmentation::from_measure(&m).unwrap()
        })
        .collect()
}

fn submeasure_fragmentations() -> Vec<Fragmentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    (0..24)
        .map(|i| {
            let space = AtomSpace::new(2 + i % 7).unwrap();
            random_submeasure_fragmentation(space, DEFAULT_WEIGHT_CAP, &mut rng).unwrap()
        })
        .collect()
}

fn lp_oracle_instances() -> Vec<measure_algebra::algebra::Collection> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    (0..200)
        .map(|_| {
            let space = AtomSpace::new(rng.gen_range(1..=5)).unwrap();
            let size = rng.gen_range(1..=6);
            random_collection(space, size, &mut rng).unwrap()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let instances = lp_oracle_instances();
    for (idx, c) in instances.iter().enumerate() {
        let lp = intersection_number(c).unwrap().value;
        let len: usize = lp.denom().try_into().unwrap();
        let brute = intersection_number_bruteforce(c, len).unwrap();
        if brute != lp {
            return fail(format!(
                "instance {idx}: LP {} vs brute force {} at length {len}",
                rational::to_string(&lp),
                rational::to_string(&brute)
            ));
        }
    }
    pass(format!(
        "{} collections, LP value equals brute force",
        instances.len()
    ))
}

fn criterion_2() -> Outcome {
    let instances = lp_oracle_instances();
    for (idx, c) in instances.iter().enumerate() {
        let (m, kappa) = measure_from_collection(c).unwrap();
        for (j, member) in c.members().iter().enumerate() {
            if m.eval(member).unwrap() < kappa {
                return fail(format!(
                    "instance {idx}: member {j} has measure below kappa"
                ));
            }
        }
    }
    pass(format!(
        "{} collections, m(c) >= kappa on every member",
        instances.len()
    ))
}

fn criterion_3() -> Outcome {
    let frags = measure_fragmentations();
    let mut levels = 0;
    for (idx, f) in frags.iter().enumerate() {
        if let Err(v) = check_fragmentation(f) {
            return fail(format!("fragmentation {idx}: {v:?}"));
        }
        if let Some(v) = check_graded(f).unwrap() {
            return fail(format!(
                "fragmentation {idx}: not graded at level {}",
                v.level
            ));
        }
        for n in 1..=f.depth() {
            let k = max_antichain(f, n).unwrap().size;
            if k as u128 > 1u128 << n {
                return fail(format!("fragmentation {idx}: K_{n} = {k} exceeds 2^{n}"));
            }
            levels += 1;
        }
    }
    pass(format!(
        "{} fragmentations, {levels} levels, graded with K_n <= 2^n",
        frags.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut frags = measure_fragmentations();
    let subs = submeasure_fragmentations();
    let sub_count = subs.len();
    frags.extend(subs);
    let mut levels = 0;
    for (idx, f) in frags.iter().enumerate() {
        for n in 1..=f.depth() {
            let (ext, _) = f.extended_to(n + 2);
            let k = max_antichain(&ext, n + 2).unwrap().size;
            let members = ext.level(n).minimal_elements();
            let c = measure_algebra::algebra::Collection::new(f.space(), members).unwrap();
            let kappa = intersection_number(&c).unwrap().value;
            if kappa < level_bound(k) {
                return fail(format!(
                    "fragmentation {idx} level {n}: kappa {} below 1/(30*{k}^2)",
                    rational::to_string(&kappa)
                ));
            }
            levels += 1;
        }
    }
    pass(format!(
        "{} fragmentations ({sub_count} from submeasures), {levels} levels meet 1/(30 K_(n+2)^2)",
        frags.len()
    ))
}

fn criterion_5() -> Outcome {
    let a = select_parameters(1, 100).unwrap();
    let b = select_parameters(2, 400).unwrap();
    if (a.k, a.p) != (3, 99) || (b.k, b.p) != (3, 199) {
        return fail(format!(
            "got (k,p) = ({},{}) and ({},{})",
            a.k, a.p, b.k, b.p
        ));
    }
    for kk in 1..=3usize {
        let m = 100 * kk * kk;
        let p = select_parameters(kk, m).unwrap();
        let (pk, mk) = (p.p as u128, (m * p.k) as u128);
        if pk * pk < 15 * mk || pk * kk as u128 >= m as u128 {
            return fail(format!("inequalities fail at K = {kk}"));
        }
    }
    pass("(1,100) -> k=3 p=99, (2,400) -> k=3 p=199, inequalities hold for K = 1,2,3")
}

fn criterion_6() -> Outcome {
    let (m, p, k) = (20, 30, 3);
    let mut built = 0;
    for seed in 0..10u64 {
        let Ok(f) = build_expander_with_cap(m, p, k, seed, DEFAULT_RETRY_CAP) else {
            continue;
        };
        let report = verify_expansion(&f).unwrap();
        if report.violation.is_some() || report.covered != 1350 {
            return fail(format!(
                "seed {seed}: verification covered {}",
                report.covered
            ));
        }
        let mut naive = 0;
        for index in naive_subsets(m, k) {
            let mut union: Vec<usize> = index.iter().flat_map(|&i| f.set(i)).collect();
            union.sort();
            union.dedup();
            if union.len() <= index.len() {
                return fail(format!("seed {seed}: {index:?} does not expand"));
            }
            if let Err(e) = choice_function(&f, &index) {
                return fail(format!(
                    "seed {seed}: no choice function for {index:?}: {e}"
                ));
            }
            naive += 1;
        }
        if naive != 1350 {
            return fail(format!("seed {seed}: naive loop saw {naive} subsets"));
        }
        built += 1;
    }
    if built < 9 {
        return fail(format!("only {built} of 10 seeds built an expander"));
    }
    pass(format!(
        "{built}/10 seeds built; 1350 subsets verified and matched for each"
    ))
}

// all nonempty subsets of 0..m of size <= 3, by plain nested loops
fn naive_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(k <= 3);
    let mut out = Vec::new();
    for a in 0..m {
        out.push(vec![a]);
        for b in a + 1..m {
            out.push(vec![a, b]);
            for c in b + 1..m {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let frags = measure_fragmentations();
    let mut sequences = 0;
    for (idx, f) in frags.iter().enumerate().take(60) {
        let len = rng.gen_range(1..=40);
        let seq = sample_level_sequence(f, 1, len, idx as u64).unwrap();
        let partition = build_signature_partition(&seq).unwrap();
        if let Err(e) = partition.check_identities(&seq) {
            return fail(format!("sequence {idx}: {e}"));
        }
        sequences += 1;
    }
    let (f, terms) = pair_incidence(100).unwrap();
    let mut traces = 0;
    for seed in 0..2u64 {
        let trace = replay_proof(&f, 1, &terms, seed).unwrap();
        trace.partition.check_identities(&terms).unwrap();
        let TraceOutcome::NotGraded(stage) = &trace.outcome else {
            return fail("pair-incidence trace did not reach the piece stage");
        };
        for j in 0..stage.expander.p() {
            let column: Vec<&Element> =
                (0..terms.len()).filter_map(|i| stage.piece(i, j)).collect();
            for (x, a) in column.iter().enumerate() {
                for b in &column[x + 1..] {
                    if !a.is_zero() && !b.is_zero() && a.intersects(b) {
                        return fail(format!("seed {seed}: column {j} pieces overlap"));
                    }
                }
            }
        }
        for (i, c) in terms.iter().enumerate() {
            let u = stage.pieces[i]
                .iter()
                .fold(f.space().zero(), |acc, a| &acc | a);
            if &u != c {
                return fail(format!("seed {seed}: pieces of term {i} do not rebuild it"));
            }
        }
        traces += 1;
    }
    pass(format!(
        "{sequences} sequences satisfy the cell identities; {traces} piece-stage traces on {} atoms",
        f.space().atom_count()
    ))
}

fn criterion_8() -> Outcome {
    let frags = measure_fragmentations();
    for (idx, f) in frags.iter().enumerate() {
        let cert = match certify_fragmentation(f) {
            Ok(c) => c,
            Err(e) => return fail(format!("fragmentation {idx}: {e}")),
        };
        if let Err(e) = cert.measure.check_axioms() {
            return fail(format!("fragmentation {idx}: {e}"));
        }
        let total: Rational = cert.measure.weights().iter().sum();
        if !cert.measure.weights().iter().all(|w| *w > Rational::zero()) || !total.is_one() {
            return fail(format!(
                "fragmentation {idx}: measure not strictly positive"
            ));
        }
    }
    pass(format!(
        "{} certified measures pass the axiom check",
        frags.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("LP value equals brute force", criterion_1),
        ("dual measure dominates kappa", criterion_2),
        ("threshold fragmentations graded, K_n <= 2^n", criterion_3),
        ("kappa_n >= 1/(30 K_(n+2)^2)", criterion_4),
        ("parameter arithmetic", criterion_5),
        ("expander at (20,30,3)", criterion_6),
        ("proof-trace identities", criterion_7),
        ("end-to-end certified measures", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took: Duration = start.elapsed();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {name} ({}) [{:.2?}]",
            i + 1,
            out.detail,
            took
        );
        if !out.pass {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
