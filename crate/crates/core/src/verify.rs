//! The verification catalogue: every check is exact and reports a one-line
//! detail next to its verdict.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{check_conditions, normalize, three_connectivity_check, BilabelledGraph};
use crate::enumerator::lemmas::{low_degree_removable_vertex, nonconsecutive_vertices};
use crate::enumerator::words::{apply_rule_a, apply_rule_b, boundary_word, is_infinitely_iterable, Word};
use crate::enumerator::{algorithm_a, brute_force_c, GraphPool};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};
use crate::functor::{consistency_check, evaluate_ta, tau_matrix};
use crate::partition::{conjugate_by_tau, generators, hat, Partition, PartitionVector};
use crate::random;
use crate::report::dims_report_default;
use crate::tensor::{classical_d4_generators, evaluate, evaluate_hat, permanent_vector, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Functor,
    Enumeration,
    Words,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "identities" => Suite::Identities,
            "functor" => Suite::Functor,
            "enumeration" => Suite::Enumeration,
            "words" => Suite::Words,
            "all" => Suite::All,
            _ => return Err(Error::Precondition(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Identities => "identities",
            Suite::Functor => "functor",
            Suite::Enumeration => "enumeration",
            Suite::Words => "words",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Verdict of a check body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome { passed, detail: detail.into() }
    }
}

#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub suite: Suite,
    body: fn() -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} - {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

impl Check {
    pub fn run(&self) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.body)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        CheckResult {
            id: self.id,
            title: self.title,
            passed: outcome.passed,
            detail: outcome.detail,
            elapsed: start.elapsed(),
        }
    }
}

pub fn catalogue() -> Vec<Check> {
    use Suite::*;
    vec![
        Check { id: "A1", title: "hat of four singletons via the tau-conjugated four-block", suite: Identities, body: a1 },
        Check { id: "A2", title: "Mobius coefficients of hat of three singletons", suite: Identities, body: a2 },
        Check { id: "A3", title: "hat of singletons evaluates to the permanent vector", suite: Identities, body: a3 },
        Check { id: "A4", title: "permanent vector glued with its reflection", suite: Identities, body: a4 },
        Check { id: "A5", title: "cap composition of tau-conjugated four-blocks away from N = 2, 4", suite: Identities, body: a5 },
        Check { id: "A6", title: "counts of C(0,2k) and brute-force agreement", suite: Enumeration, body: a6 },
        Check { id: "A7", title: "graph functor equals the partition expansion", suite: Functor, body: a7 },
        Check { id: "A8", title: "quotient relations preserve the N = 4 evaluation", suite: Functor, body: a8 },
        Check { id: "A9", title: "images are fixed by the classical group", suite: Functor, body: a9 },
        Check { id: "A10", title: "functoriality on random partitions and graphs", suite: Functor, body: a10 },
        Check { id: "A11", title: "structure lemmas on connected pool members", suite: Enumeration, body: a11 },
        Check { id: "A12", title: "rank report for C(0,k) at N = 4", suite: Enumeration, body: a12 },
        Check { id: "W1", title: "replay of the word derivation example", suite: Words, body: w1 },
        Check { id: "W2", title: "iterability of the sample words", suite: Words, body: w2 },
    ]
}

pub fn checks_in(suite: Suite) -> Vec<Check> {
    catalogue().into_iter().filter(|c| suite == Suite::All || c.suite == suite).collect()
}

pub fn find(id: &str) -> Option<Check> {
    catalogue().into_iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    checks_in(suite).iter().map(Check::run).collect()
}

/// The pool for `k0 = 8`, built once per process.
pub fn pool8() -> Result<&'static GraphPool> {
    static POOL: OnceLock<std::result::Result<GraphPool, Error>> = OnceLock::new();
    POOL.get_or_init(|| algorithm_a(8)).as_ref().map_err(Clone::clone)
}

fn lower(labels: &[usize]) -> Partition {
    Partition::from_labels(0, labels.len(), labels).expect("label count matches")
}

/// `sum c_i p_i` over partitions of one shape.
fn combination(terms: &[(i64, i64, Partition)]) -> Result<PartitionVector> {
    let first = &terms[0].2;
    PartitionVector::from_terms(first.upper(), first.lower(), terms.iter().map(|(p, q, t)| (Scalar::ratio(*p, *q), t.clone())))
}

fn a1() -> Result<Outcome> {
    let n = Scalar::integer(4);
    let lhs = hat(&Partition::singletons(0, 4));
    let conj = conjugate_by_tau(&Partition::fourblock().into(), &n)?;
    let rest = combination(&[
        (-2, 1, Partition::fourblock()),
        (1, 1, lower(&[0, 1, 0, 1])),
        (1, 1, lower(&[0, 0, 1, 1])),
        (1, 1, lower(&[0, 1, 1, 0])),
    ])?;
    let rhs = conj.scale(&Scalar::integer(-4)).add(&rest)?;
    let diff = lhs.sub(&rhs)?;
    Ok(Outcome::new(diff.is_zero(), format!("{} terms on the left, difference has {} terms", lhs.len(), diff.len())))
}

fn a2() -> Result<Outcome> {
    let v = hat(&Partition::singletons(0, 3));
    let expected = [
        (lower(&[0, 1, 2]), 1),
        (lower(&[0, 0, 1]), -1),
        (lower(&[0, 1, 0]), -1),
        (lower(&[0, 1, 1]), -1),
        (lower(&[0, 0, 0]), 2),
    ];
    let got: Vec<Scalar> = expected.iter().map(|(p, _)| v.coefficient(p)).collect();
    let ok = v.len() == 5 && expected.iter().zip(&got).all(|((_, c), g)| *g == Scalar::integer(*c));
    let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
    Ok(Outcome::new(ok, format!("coefficients ({})", shown.join(", "))))
}

fn a3() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let same = evaluate_hat(&Partition::singletons(0, n).into(), n)? == permanent_vector(n)?;
        ok &= same;
        notes.push(format!("N={n}: {}", if same { "equal" } else { "differs" }));
    }
    for n in 2..=3 {
        for l in n + 1..=n + 2 {
            let zero = evaluate_hat(&Partition::singletons(0, l).into(), n)?.is_zero();
            ok &= zero;
            if !zero {
                notes.push(format!("N={n}, l={l}: nonzero"));
            }
        }
    }
    notes.push("l > N gives zero for N = 2, 3".into());
    Ok(Outcome::new(ok, notes.join("; ")))
}

/// `(1 (x) 1 (x) P*)(P (x) 1 (x) 1)` has entries `sum_z P[i1 i2 z] P[z j1 j2]`.
pub fn permanent_sandwich(n: usize) -> Result<Tensor> {
    let p = permanent_vector(n)?;
    let inner = n.pow(n as u32 - 2);
    let left = Matrix::from_flat(n * n, inner, p.flat().to_vec())?;
    let right = Matrix::from_flat(inner, n * n, p.flat().to_vec())?;
    Tensor::from_matrix(n, 2, 2, left.matmul(&right)?)
}

fn a4() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 3..=5 {
        let g = generators(&Scalar::from(n))?;
        let combo = g.nested.add(&g.crossing)?.sub(&g.connecter.scale(&Scalar::integer(2)))?;
        let rhs = evaluate(&combo, n)?.scale(&Scalar::factorial(n as u32 - 2));
        let same = permanent_sandwich(n)? == rhs;
        ok &= same;
        notes.push(format!("N={n}: {}", if same { "equal" } else { "differs" }));
    }
    Ok(Outcome::new(ok, notes.join("; ")))
}

/// The cap `q` in `P(8, 2)` joining the outer legs through and capping the
/// inner six in nested pairs.
pub fn nested_cap() -> Partition {
    Partition::from_labels(8, 2, &[0, 1, 2, 3, 3, 2, 1, 4, 0, 4]).expect("ten labels")
}

/// Left and right sides of the four-block composition identity at `n`.
pub fn cap_identity(n: usize) -> Result<(PartitionVector, PartitionVector)> {
    let ns = Scalar::from(n);
    let conj = conjugate_by_tau(&Partition::fourblock().into(), &ns)?;
    let inner = conj.tensor(&Partition::fourblock().into());
    let lhs = PartitionVector::compose(&nested_cap().into(), &inner, &ns)?;
    let inv = ns.recip()?;
    let one = Scalar::one();
    let pair_coeff = &(&one - &(&Scalar::integer(6) * &inv)) + &(&Scalar::integer(12) * &(&inv * &inv));
    let single_coeff = -(&(&Scalar::integer(2) * &inv)
        * &(&(&one - &(&Scalar::integer(2) * &inv)) * &(&one - &(&Scalar::integer(4) * &inv))));
    let rhs = PartitionVector::from_terms(
        0,
        2,
        [(pair_coeff, Partition::pair()), (single_coeff, Partition::singleton().tensor(&Partition::singleton()))],
    )?;
    Ok((lhs, rhs))
}

fn a5() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [3, 5, 6, 7] {
        let (lhs, rhs) = cap_identity(n)?;
        let same = lhs == rhs && evaluate(&lhs, n)? == evaluate(&rhs, n)?;
        ok &= same;
        notes.push(format!("N={n}: {}", if same { "equal" } else { "differs" }));
    }
    Ok(Outcome::new(ok, notes.join("; ")))
}

fn a6() -> Result<Outcome> {
    let pool = pool8()?;
    let expected = [(2, 1), (4, 4), (6, 25), (8, 196)];
    let mut ok = expected.iter().all(|&(l, c)| pool.count(0, l) == c);
    let mut notes: Vec<String> = expected.iter().map(|&(l, _)| format!("#C(0,{l})={}", pool.count(0, l))).collect();
    let mut mismatched = Vec::new();
    for total in 0..=6 {
        for k in 0..=total {
            let brute = brute_force_c(k, total - k, 8, 8);
            if brute.len() != pool.count(k, total - k) || !brute.iter().all(|g| pool.contains(g)) {
                mismatched.push(format!("({k},{})", total - k));
            }
        }
    }
    let wide = brute_force_c(0, 8, 10, 10);
    if wide.len() != pool.count(0, 8) || !wide.iter().all(|g| pool.contains(g)) {
        mismatched.push("(0,8)".into());
    }
    ok &= mismatched.is_empty();
    notes.push(if mismatched.is_empty() {
        "brute force agrees on all 28 cells with k+l <= 6 and on (0,8)".into()
    } else {
        format!("brute force disagrees on {}", mismatched.join(" "))
    });
    let monotone = pool.trace().iter().all(|s| s.to.0 + s.to.1 >= s.from.0 + s.from.1);
    ok &= monotone;
    if !monotone {
        notes.push("a gluing step shrank the boundary".into());
    }
    Ok(Outcome::new(ok, notes.join("; ")))
}

fn pool_graphs_up_to(total: usize) -> Result<Vec<&'static BilabelledGraph>> {
    Ok(pool8()?.graphs().filter(|g| g.boundary_size() <= total).collect())
}

fn a7() -> Result<Outcome> {
    let graphs = pool_graphs_up_to(6)?;
    let mut failures = 0;
    for g in &graphs {
        if !consistency_check(g, 4)? {
            failures += 1;
        }
    }
    Ok(Outcome::new(failures == 0, format!("{} graphs, {failures} mismatches", graphs.len())))
}

/// Composites of pool graphs: reducible inputs for the quotient check.
pub fn quotient_samples() -> Result<Vec<BilabelledGraph>> {
    let pool = pool8()?;
    let mut out = Vec::new();
    for m in 0..=3 {
        for k in 0..=4 {
            for l in 0..=(4 - k) {
                for lower in pool.cell(k, m) {
                    for upper in pool.cell(m, l) {
                        out.push(BilabelledGraph::compose(upper, lower)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn a8() -> Result<Outcome> {
    let a = tau_matrix(4)?;
    let n = Scalar::integer(4);
    let samples = quotient_samples()?;
    let (mut reduced, mut looped, mut failures) = (0, 0, 0);
    for g in &samples {
        match normalize(g, &n) {
            Ok((c, h)) => {
                if evaluate_ta(g, &a)? != evaluate_ta(&h, &a)?.scale(&c) {
                    failures += 1;
                }
                if h != *g {
                    reduced += 1;
                }
            }
            Err(Error::LoopCreated(_)) => looped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome::new(
        failures == 0 && reduced > 0,
        format!(
            "{} composites, {reduced} changed by reduction, {looped} stopped at a loop, {failures} mismatches",
            samples.len()
        ),
    ))
}

fn a9() -> Result<Outcome> {
    let a = tau_matrix(4)?;
    let gens = classical_d4_generators();
    let pool = pool8()?;
    let mut checked = 0;
    let mut failures = 0;
    for k in 0..=6 {
        for g in pool.cell(0, k) {
            let t = evaluate_ta(g, &a)?;
            for x in &gens {
                checked += 1;
                if t.apply_on_every_leg(&x.matrix())? != t {
                    failures += 1;
                }
            }
        }
    }
    Ok(Outcome::new(
        failures == 0,
        format!("{checked} (vector, generator) pairs over {} generators, {failures} not fixed", gens.len()),
    ))
}

pub const RANDOM_CASES: usize = 500;

/// Compares evaluation with the matrix operations on one random instance.
pub fn random_partition_case(rng: &mut impl Rng, n: usize) -> Result<bool> {
    let ns = Scalar::from(n);
    Ok(match rng.gen_range(0..3) {
        0 => {
            let (a, b, c, d) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
            let p = random::partition_vector(rng, a, b, 3);
            let q = random::partition_vector(rng, c, d, 3);
            evaluate(&p.tensor(&q), n)? == evaluate(&p, n)?.tensor(&evaluate(&q, n)?)?
        }
        1 => {
            let (a, m, b) = (rng.gen_range(0..=2), rng.gen_range(0..=3), rng.gen_range(0..=2));
            let p = random::partition_vector(rng, a, m, 3);
            let q = random::partition_vector(rng, m, b, 3);
            evaluate(&PartitionVector::compose(&q, &p, &ns)?, n)? == evaluate(&q, n)?.compose(&evaluate(&p, n)?)?
        }
        _ => {
            let (a, b) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            let p = random::partition_vector(rng, a, b, 3);
            evaluate(&p.involution(), n)? == evaluate(&p, n)?.transpose()
        }
    })
}

/// Same for the graph functor, with `A` either `tau` or a random symmetric
/// matrix.
pub fn random_graph_case(rng: &mut impl Rng, n: usize) -> Result<bool> {
    let a = if rng.gen_bool(0.5) { tau_matrix(n)? } else { random::symmetric_matrix(rng, n) };
    Ok(match rng.gen_range(0..3) {
        0 => {
            let (a1, b1, a2, b2) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
            let g = random::graph(rng, a1, b1, 3, 4);
            let h = random::graph(rng, a2, b2, 3, 4);
            evaluate_ta(&g.tensor(&h), &a)? == evaluate_ta(&g, &a)?.tensor(&evaluate_ta(&h, &a)?)?
        }
        1 => {
            let (k, m, l) = (rng.gen_range(0..=2), rng.gen_range(0..=3), rng.gen_range(0..=2));
            let g = random::graph(rng, k, m, 4, 5);
            let h = random::graph(rng, m, l, 4, 5);
            evaluate_ta(&BilabelledGraph::compose(&h, &g)?, &a)? == evaluate_ta(&h, &a)?.compose(&evaluate_ta(&g, &a)?)?
        }
        _ => {
            let (k, l) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            let g = random::graph(rng, k, l, 4, 6);
            evaluate_ta(&g.involution(), &a)? == evaluate_ta(&g, &a)?.transpose()
        }
    })
}

fn a10() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut notes = Vec::new();
    let mut failures = 0;
    for n in 3..=5 {
        let mut part = 0;
        let mut graph = 0;
        for _ in 0..RANDOM_CASES {
            part += usize::from(!random_partition_case(&mut rng, n)?);
            graph += usize::from(!random_graph_case(&mut rng, n)?);
        }
        failures += part + graph;
        notes.push(format!("N={n}: {part}+{graph} failures"));
    }
    Ok(Outcome::new(
        failures == 0,
        format!("{RANDOM_CASES} partition and {RANDOM_CASES} graph cases per N; {}", notes.join(", ")),
    ))
}

fn a11() -> Result<Outcome> {
    let pool = pool8()?;
    let mut connected = 0;
    let mut problems: Vec<String> = Vec::new();
    for g in pool.graphs().filter(|g| g.is_connected() && g.boundary_size() > 0) {
        connected += 1;
        let core_size = g.core().vertices.len();
        if core_size >= 2 {
            if low_degree_removable_vertex(g).is_none() {
                problems.push(format!("no removable low-degree vertex in {g:?}"));
            }
            if !three_connectivity_check(g)? {
                problems.push(format!("core apex graph not 3-connected for {g:?}"));
            }
        }
        if !nonconsecutive_vertices(g).is_empty() {
            problems.push(format!("non-consecutive vertex in {g:?}"));
        }
        let w = boundary_word(g)?;
        if w.len() % 2 == 1 || is_infinitely_iterable(&w)? {
            problems.push(format!("boundary word {w} is odd or iterable"));
        }
    }
    let detail = match problems.first() {
        None => format!("{connected} connected graphs, all four properties hold"),
        Some(p) => format!("{} violations, first: {p}", problems.len()),
    };
    Ok(Outcome::new(problems.is_empty() && connected > 0, detail))
}

fn a12() -> Result<Outcome> {
    let rows = dims_report_default(pool8()?, 4, 6)?;
    let ok = rows.len() == 3 && rows.iter().all(|r| r.rank <= r.count);
    let shown: Vec<String> = rows
        .iter()
        .map(|r| format!("k={}: rank {} of {}", r.k, r.rank, r.count))
        .collect();
    Ok(Outcome::new(ok, shown.join("; ")))
}

fn w1() -> Result<Outcome> {
    let start: Word = "aaaa".parse()?;
    let w1 = apply_rule_a(&start, 0, 3)?;
    let w2 = apply_rule_a(&w1, 3, 5)?;
    let w3 = apply_rule_b(&w2, 2, 2)?;
    let got = [w1.to_string(), w2.to_string(), w3.to_string()];
    let ok = got == ["BBBaaa", "BBBCCCCCaa", "BBddCCCCaa"];
    Ok(Outcome::new(ok, format!("aaaa -> {} -> {} -> {}", got[0], got[1], got[2])))
}

fn w2() -> Result<Outcome> {
    let cases = [("aabb", true), ("aaaa", false), ("aBcD", false), ("abbb", false)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (s, expected) in cases {
        let got = is_infinitely_iterable(&s.parse()?)?;
        ok &= got == expected;
        notes.push(format!("{s}: {got}"));
    }
    Ok(Outcome::new(ok, notes.join(", ")))
}

/// Every pool member satisfies the conditions and every rotation of it is in
/// the pool.
pub fn pool_is_closed(pool: &GraphPool) -> bool {
    pool.graphs().all(|g| check_conditions(g).all() && g.rotations().iter().all(|r| pool.contains(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for r in run_suite(Suite::Identities).into_iter().chain(run_suite(Suite::Words)) {
            eprintln!("{r}");
            assert!(r.passed, "{r}");
        }
    }
}
