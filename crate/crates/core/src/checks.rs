//! Self-test suites run by the command-line `selftest` command. Each check
//! recomputes its expectations independently of the code under test where
//! practical.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::bounds::{decompose3, decompose_general, f_general, residue_identity, six_lambda_residue};
use crate::connectivity::{local_connectivity, pairwise_connectivity};
use crate::instances::{cycle_instance, cycle_routing_scheme, random_instances, verify_routing_scheme};
use crate::multigraph::{DegreeMode, VertexId};
use crate::packing::{fractional_capacity_lp, half_integer_capacity, max_integer_packing, verify_packing};
use crate::rate::Rate;
use crate::report::{analyze, AnalyzeOptions};
use crate::splitting::{eliminate_relays, find_disjoint_admissible_pairs, is_admissible, lift_packing, split_off_at};
use crate::strength::edge_strength;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Appendix,
    Splitting,
    Packing,
    Examples,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Scope, String> {
        match s {
            "appendix" => Ok(Scope::Appendix),
            "splitting" => Ok(Scope::Splitting),
            "packing" => Ok(Scope::Packing),
            "examples" => Ok(Scope::Examples),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown scope {s:?}; expected appendix, splitting, packing, examples or all")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{status}  {:<28} {} cases", self.name, self.cases);
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(", {} failures; first: {first}", self.failures.len()));
        }
        s
    }
}

pub fn run(scope: Scope) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    if matches!(scope, Scope::Appendix | Scope::All) {
        out.push(residues_three_terminal());
        out.push(residues_general());
    }
    if matches!(scope, Scope::Splitting | Scope::All) {
        out.push(splitting_preserves_connectivity());
        out.push(lifted_packings());
    }
    if matches!(scope, Scope::Packing | Scope::All) {
        out.push(packing_orderings());
    }
    if matches!(scope, Scope::Examples | Scope::All) {
        out.push(cycle_brackets());
        out.push(cycle_schemes());
    }
    out
}

fn outcome(name: &'static str, cases: usize, failures: Vec<String>) -> CheckOutcome {
    CheckOutcome { name, cases, failures }
}

/// `(6λ−3) mod 8` is odd, equals 1 whenever δ = 1, and the decomposition
/// `λ = ⌊(8k+3)/6⌋ + δ` is exact, for λ up to 10⁴.
pub fn residues_three_terminal() -> CheckOutcome {
    let mut failures = Vec::new();
    for lambda in 1..=10_000u64 {
        let d = decompose3(lambda);
        let r = six_lambda_residue(lambda);
        let exact = (8 * d.k + 3) / 6 + d.delta == lambda && (8 * (d.k + 1) + 3) / 6 > lambda;
        if !exact || r.is_multiple_of(2) || r != (6 * lambda - 3) % 8 || (d.delta == 1 && r != 1) {
            failures.push(format!("λ={lambda}: {d:?}"));
        }
    }
    outcome("residues, three terminals", 10_000, failures)
}

/// The general decomposition, its unit-or-two step size, and the residue
/// congruence with its zero biconditional, for λ ≤ 200 and a ≤ 20.
pub fn residues_general() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in 2..=20u64 {
        for lambda in 2..=200u64 {
            cases += 1;
            let d = decompose_general(lambda, a);
            let step = f_general(a, d.k + 1) - f_general(a, d.k);
            let c = residue_identity(lambda, a);
            let m = 2 * (a - 1);
            let direct = (c.residue_prime + c.residue) % m == a * c.delta
                && (c.residue_prime == 0) == (c.residue == 0 && c.delta == 0);
            if f_general(a, d.k) + d.delta != lambda || !(1..=2).contains(&step) || !c.holds || !direct {
                failures.push(format!("a={a} λ={lambda}: {d:?} {c:?}"));
            }
        }
    }
    outcome("residues, general", cases, failures)
}

fn sample_seeds() -> Vec<(usize, usize, usize, u64)> {
    // (vertices, extra edges, terminals, first seed)
    vec![(6, 5, 3, 100), (7, 6, 3, 200), (7, 7, 4, 300), (8, 6, 3, 400)]
}

/// Every pair reported admissible keeps all pairwise connectivities among
/// the other vertices; every even-degree relay without cut-edges splits
/// completely.
pub fn splitting_preserves_connectivity() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (n, extra, t, seed) in sample_seeds() {
        for (seed, inst, _) in random_instances(8, n, extra, t, seed) {
            let (g, a) = (&inst.graph, &inst.terminals);
            let others: Vec<VertexId> = g.vertices().collect();
            for x in g.vertices().filter(|v| !a.contains(*v)) {
                let rest: Vec<VertexId> = others.iter().copied().filter(|v| *v != x).collect();
                let before = pairwise_connectivity(g, &rest);
                let incident: Vec<_> = g.incident(x).map(|e| e.id).collect();
                for (i, &e) in incident.iter().enumerate() {
                    for &f in &incident[i + 1..] {
                        cases += 1;
                        let Ok(admissible) = is_admissible(g, x, e, f) else { continue };
                        let (after_graph, _) = split_off_at(g, x, e, f).expect("splittable");
                        let mut preserved = true;
                        for (&(u, w), &lam) in &before {
                            if local_connectivity(&after_graph, u, w).unwrap_or(0) != lam {
                                preserved = false;
                            }
                        }
                        if admissible != preserved {
                            failures.push(format!("seed {seed}: pivot {} pair {}/{}", g.name(x), e.0, f.0));
                        }
                    }
                }
                let degree = g.degree(x, DegreeMode::Unit).unwrap_or(0);
                let bridge = g.incident(x).any(|e| crate::connectivity::is_cut_edge(g, e.id).unwrap_or(false));
                if degree % 2 == 0 && degree != 0 && !bridge && find_disjoint_admissible_pairs(g, x).is_err() {
                    failures.push(format!("seed {seed}: no complete splitting at {}", g.name(x)));
                }
            }
        }
    }
    outcome("splitting admissibility", cases, failures)
}

/// Relay elimination keeps scaled terminal connectivities, and lifted
/// packings verify on the scaled input with the same tree count.
pub fn lifted_packings() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (n, extra, t, seed) in sample_seeds() {
        for (seed, inst, _) in random_instances(6, n, extra, t, seed + 50) {
            cases += 1;
            let (g, a) = (&inst.graph, &inst.terminals);
            let elim = match eliminate_relays(g, a) {
                Ok(e) => e,
                Err(e) => {
                    failures.push(format!("seed {seed}: {e}"));
                    continue;
                }
            };
            let terms = a.members();
            let before = pairwise_connectivity(g, &terms);
            let after = pairwise_connectivity(&elim.graph, &terms);
            if before.iter().any(|(k, v)| after.get(k) != Some(&(v * elim.scale))) {
                failures.push(format!("seed {seed}: terminal connectivity changed"));
            }
            let (k, packing) = max_integer_packing(&elim.graph, a).expect("pack split graph");
            match lift_packing(&elim.history, a, &packing) {
                Ok(lifted) => {
                    let base = g.scale_capacities(elim.scale);
                    if !verify_packing(&base, a, &lifted).ok() || lifted.rate() != Rate::integer(k) {
                        failures.push(format!("seed {seed}: lifted packing rejected"));
                    }
                }
                Err(e) => failures.push(format!("seed {seed}: lift failed: {e}")),
            }
        }
    }
    outcome("lifted packings", cases, failures)
}

/// `k ≤ π_½ ≤ π_f ≤ min(η, λ)` with verified certificates, plus the
/// closed-form lower bounds.
pub fn packing_orderings() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (n, extra, t, seed) in sample_seeds() {
        for (seed, inst, _) in random_instances(6, n, extra, t, seed + 900) {
            cases += 1;
            match analyze(&inst, AnalyzeOptions::default()) {
                Ok(r) => {
                    let v = r.consistency();
                    if !v.ok() {
                        failures.push(format!("seed {seed}: {}", v.problems.join("; ")));
                    }
                }
                Err(e) => failures.push(format!("seed {seed}: {e}")),
            }
        }
    }
    outcome("packing orderings", cases, failures)
}

fn cycle_layouts(a: usize) -> Vec<Vec<usize>> {
    let mut layouts = vec![vec![], vec![0], (0..a).collect()];
    if a == 5 {
        layouts.push(vec![0, 2]);
    }
    layouts
}

/// On the terminal cycle family the LP value, the strength and the γ
/// bracket all equal `a/(a−1)`.
pub fn cycle_brackets() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in 3..=6usize {
        let want = Rate::new(a as i64, a as i64 - 1);
        for slots in cycle_layouts(a) {
            cases += 1;
            let inst = cycle_instance(a, &slots).expect("cycle");
            let (lp, _) = fractional_capacity_lp(&inst.graph, &inst.terminals).expect("lp");
            let (eta, _) = edge_strength(&inst.graph, &inst.terminals).expect("strength");
            let (half, _) = half_integer_capacity(&inst.graph, &inst.terminals).expect("half");
            let want_half = if a == 3 { Rate::new(3, 2) } else { Rate::ONE };
            if lp != want || eta != want || half != want_half {
                failures.push(format!("a={a} relays {slots:?}: LP {lp}, η {eta}, half {half}"));
            }
        }
    }
    outcome("cycle family brackets", cases, failures)
}

/// The explicit cycle scheme verifies with rate `a/(a−1)` and every edge
/// carrying `a − 1` symbols.
pub fn cycle_schemes() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in 3..=8usize {
        for slots in cycle_layouts(a) {
            cases += 1;
            let inst = cycle_instance(a, &slots).expect("cycle");
            let s = cycle_routing_scheme(&inst).expect("scheme");
            let v = verify_routing_scheme(&inst.graph, &inst.terminals, &s);
            let loads: BTreeSet<u64> = s.edge_loads().values().copied().collect();
            let covered = s.edge_loads().len() == inst.graph.edge_count();
            if !v.ok() || s.rate() != Rate::new(a as i64, a as i64 - 1) || loads != BTreeSet::from([a as u64 - 1]) || !covered {
                failures.push(format!("a={a} relays {slots:?}: {:?}", v.problems));
            }
        }
    }
    outcome("cycle family schemes", cases, failures)
}
