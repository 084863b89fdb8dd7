//! End-to-end analysis of one instance: prune, terminal connectivity,
//! optional relay elimination, packings, strength and bounds, with every
//! certificate kept for output.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bounds::{
    general_gain_bound, general_lower_bounds, three_terminal_gain_bounds, three_terminal_lower_bounds, Bound,
    GainBounds, GammaBracket, GeneralBounds, ThreeTerminalBounds,
};
use crate::connectivity::{max_flow, CutCertificate};
use crate::error::{Error, Result};
use crate::multigraph::{prune_to_core, validate, Instance, Multigraph};
use crate::packing::{
    fractional_capacity_lp, half_integer_capacity, max_integer_packing, verify_packing, SteinerPacking, Verdict,
};
use crate::rate::Rate;
use crate::splitting::{eliminate_relays, lift_packing};
use crate::strength::{edge_strength, TerminalPartition};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Also pack on the relay-free split graph and lift the result back.
    pub via_splitting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub vertices: usize,
    pub edges: usize,
    pub terminals: usize,
    pub lambda: u64,
    /// Vertices removed by pruning.
    pub pruned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact {
    pub integer: u64,
    pub half: Rate,
    pub fractional: Rate,
    pub strength: Rate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub three_terminal: Option<ThreeTerminalBounds>,
    pub three_terminal_gain: Option<GainBounds>,
    pub general: GeneralBounds,
    pub general_gain: Bound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificates {
    pub integer_packing: SteinerPacking,
    pub half_packing: SteinerPacking,
    pub fractional_packing: SteinerPacking,
    /// A minimum cut between the source and some sink.
    pub cut: CutCertificate,
    pub partition: TerminalPartition,
}

/// Packing through the relay-free split graph `G′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRoute {
    pub scale: u64,
    pub relays_removed: usize,
    pub split_edges: usize,
    /// Integer packing size on `G′`.
    pub split_integer: u64,
    /// Trees in the lifted packing on the scaled input.
    pub lifted_trees: u64,
    /// `split_integer / scale`, achieved on the input by the lifted packing.
    pub lifted_rate: Rate,
    pub lifted_verified: bool,
    pub split_fractional: Rate,
    pub lifted_fractional: Rate,
    pub lifted_fractional_verified: bool,
    pub history_json: String,
    pub lifted_packing: SteinerPacking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityReport {
    /// The pruned instance every value refers to.
    pub core: Instance,
    pub summary: Summary,
    /// Terminal connectivity 1 forces γ = π = 1; nothing else is computed.
    pub short_circuit: bool,
    pub exact: Option<Exact>,
    pub bounds: Option<BoundTable>,
    pub bracket: GammaBracket,
    pub certificates: Option<Certificates>,
    pub via_splitting: Option<SplitRoute>,
}

pub fn analyze(inst: &Instance, opts: AnalyzeOptions) -> Result<CapacityReport> {
    let (g, a) = (&inst.graph, &inst.terminals);
    validate(g, a)?;
    let core = match prune_to_core(g, a) {
        Ok(core) => core,
        Err(Error::BridgeBetweenTerminals { .. }) => return Ok(unit_report(inst)),
        Err(e) => return Err(e),
    };
    let mut cut: Option<CutCertificate> = None;
    for &t in &a.sinks {
        let (value, c) = max_flow(&core, a.source, t)?;
        if cut.as_ref().is_none_or(|best| value < best.value) {
            cut = Some(c);
        }
    }
    let cut = cut.expect("at least one sink");
    let lambda = cut.value;
    let summary = Summary {
        vertices: core.vertex_count(),
        edges: core.edge_count(),
        terminals: a.len(),
        lambda,
        pruned: g.vertex_count() - core.vertex_count(),
    };
    let (integer, integer_packing) = max_integer_packing(&core, a)?;
    let (half, half_packing) = half_integer_capacity(&core, a)?;
    let (fractional, fractional_packing) = fractional_capacity_lp(&core, a)?;
    let (strength, partition) = edge_strength(&core, a)?;
    let size = a.len() as u64;
    let bounds = BoundTable {
        three_terminal: (size == 3).then(|| three_terminal_lower_bounds(lambda)),
        three_terminal_gain: if size == 3 { three_terminal_gain_bounds(lambda).ok() } else { None },
        general: general_lower_bounds(lambda, size),
        general_gain: general_gain_bound(size),
    };
    let bracket = GammaBracket::new(fractional, strength.min(Rate::integer(lambda)));
    let core_instance = Instance::new(core, a.clone());
    let via_splitting = if opts.via_splitting { Some(split_route(&core_instance)?) } else { None };
    Ok(CapacityReport {
        core: core_instance,
        summary,
        short_circuit: false,
        exact: Some(Exact { integer, half, fractional, strength }),
        bounds: Some(bounds),
        bracket,
        certificates: Some(Certificates { integer_packing, half_packing, fractional_packing, cut, partition }),
        via_splitting,
    })
}

fn unit_report(inst: &Instance) -> CapacityReport {
    CapacityReport {
        core: inst.clone(),
        summary: Summary {
            vertices: inst.graph.vertex_count(),
            edges: inst.graph.edge_count(),
            terminals: inst.terminals.len(),
            lambda: 1,
            pruned: 0,
        },
        short_circuit: true,
        exact: None,
        bounds: None,
        bracket: GammaBracket::new(Rate::ONE, Rate::ONE),
        certificates: None,
        via_splitting: None,
    }
}

/// Packs on the split graph and lifts both the integer and the fractional
/// packing back onto the input, verifying each.
pub fn split_route(core: &Instance) -> Result<SplitRoute> {
    let (g, a) = (&core.graph, &core.terminals);
    let elim = eliminate_relays(g, a)?;
    let (split_integer, packing) = max_integer_packing(&elim.graph, a)?;
    let lifted = lift_packing(&elim.history, a, &packing)?;
    let lifted_trees = lifted.copies()?.len() as u64;
    let on_input = lifted.downscale(elim.scale);
    let (split_fractional, frac_packing) = fractional_capacity_lp(&elim.graph, a)?;
    let lifted_frac = lift_packing(&elim.history, a, &frac_packing)?.downscale(elim.scale);
    Ok(SplitRoute {
        scale: elim.scale,
        relays_removed: elim.history.deleted.len(),
        split_edges: elim.graph.edge_count(),
        split_integer,
        lifted_trees,
        lifted_rate: Rate::new(split_integer as i64, elim.scale as i64),
        lifted_verified: verify_packing(g, a, &on_input).ok() && on_input.rate() * Rate::integer(elim.scale) == Rate::integer(split_integer),
        split_fractional,
        lifted_fractional: lifted_frac.rate(),
        lifted_fractional_verified: verify_packing(g, a, &lifted_frac).ok(),
        history_json: elim.history.to_json(),
        lifted_packing: lifted,
    })
}

impl CapacityReport {
    /// Cross-checks every value against the certificates and the bound
    /// formulas.
    pub fn consistency(&self) -> Verdict {
        let mut v = Verdict::default();
        let b = self.bracket;
        if b.lower > b.upper {
            v.fail(format!("bracket {} > {}", b.lower, b.upper));
        }
        let (Some(x), Some(bounds), Some(c)) = (&self.exact, &self.bounds, &self.certificates) else {
            return v;
        };
        let (g, a) = (&self.core.graph, &self.core.terminals);
        let lambda = Rate::integer(self.summary.lambda);
        if !(Rate::integer(x.integer) <= x.half && x.half <= x.fractional && x.fractional <= x.strength && x.fractional <= lambda) {
            v.fail(format!("ordering k ≤ half ≤ LP ≤ min(η, λ) violated: {} {} {} {} {}", x.integer, x.half, x.fractional, x.strength, lambda));
        }
        if let Some(t) = bounds.three_terminal {
            if x.integer < t.integer || x.half < t.half {
                v.fail("three-terminal lower bound violated".into());
            }
        }
        if x.fractional < bounds.general.half_exact {
            v.fail("general half-integer lower bound violated".into());
        }
        for (name, p, want) in [
            ("integer", &c.integer_packing, Rate::integer(x.integer)),
            ("half", &c.half_packing, x.half),
            ("fractional", &c.fractional_packing, x.fractional),
        ] {
            let check = verify_packing(g, a, p);
            if !check.ok() {
                v.fail(format!("{name} packing: {}", check.problems.join("; ")));
            }
            if p.rate() != want {
                v.fail(format!("{name} packing has rate {}, expected {want}", p.rate()));
            }
        }
        if !c.cut.check(g) || c.cut.value != self.summary.lambda {
            v.fail("cut certificate does not check".into());
        }
        if c.partition.ratio() != x.strength {
            v.fail("partition witness does not match strength".into());
        }
        if let Some(s) = &self.via_splitting {
            if !s.lifted_verified || s.lifted_trees != s.split_integer {
                v.fail("lifted integer packing rejected".into());
            }
            if !s.lifted_fractional_verified || s.lifted_fractional * Rate::integer(s.scale) != s.split_fractional {
                v.fail("lifted fractional packing rejected".into());
            }
            if s.lifted_rate > x.fractional || s.lifted_fractional > x.fractional {
                v.fail("lifted rate exceeds the direct fractional capacity".into());
            }
        }
        v
    }

    pub fn to_value(&self) -> Value {
        let g = &self.core.graph;
        let a = &self.core.terminals;
        let s = &self.summary;
        let mut out = json!({
            "instance": {
                "vertices": s.vertices,
                "edges": s.edges,
                "terminals": s.terminals,
                "source": g.name(a.source),
                "sinks": a.sinks.iter().map(|t| g.name(*t)).collect::<Vec<_>>(),
                "lambda": s.lambda,
                "pruned_vertices": s.pruned,
            },
            "short_circuit": self.short_circuit,
            "gamma": {
                "lower": self.bracket.lower,
                "upper": self.bracket.upper,
                "tight": self.bracket.tight,
            },
        });
        if let Some(x) = &self.exact {
            out["exact"] = json!({
                "integer": x.integer,
                "half_integer": x.half,
                "fractional": x.fractional,
                "strength": x.strength,
            });
        }
        if let Some(b) = &self.bounds {
            let mut table = json!({
                "upper_lambda": s.lambda,
                "general": b.general,
                "general_gain": b.general_gain,
            });
            if let Some(t) = b.three_terminal {
                table["three_terminal"] = json!(t);
            }
            if let Some(t) = b.three_terminal_gain {
                table["three_terminal_gain"] = json!(t);
            }
            out["bounds"] = table;
        }
        if let Some(c) = &self.certificates {
            let parse = |p: &SteinerPacking| -> Value { serde_json::from_str(&p.to_json()).expect("packing json") };
            out["certificates"] = json!({
                "integer_packing": parse(&c.integer_packing),
                "half_integer_packing": parse(&c.half_packing),
                "fractional_packing": parse(&c.fractional_packing),
                "min_cut": {
                    "value": c.cut.value,
                    "side": c.cut.side.iter().map(|v| g.name(*v)).collect::<Vec<_>>(),
                    "crossing": c.cut.crossing.iter().map(|e| e.0).collect::<Vec<_>>(),
                },
                "partition": {
                    "blocks": c.partition.blocks.iter().map(|b| b.iter().map(|v| g.name(*v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "crossing": c.partition.crossing,
                },
            });
        }
        if let Some(r) = &self.via_splitting {
            out["via_splitting"] = json!({
                "scale": r.scale,
                "relays_removed": r.relays_removed,
                "split_edges": r.split_edges,
                "split_integer": r.split_integer,
                "lifted_trees": r.lifted_trees,
                "lifted_rate": r.lifted_rate,
                "lifted_verified": r.lifted_verified,
                "split_fractional": r.split_fractional,
                "lifted_fractional": r.lifted_fractional,
                "lifted_fractional_verified": r.lifted_fractional_verified,
                "history": serde_json::from_str::<Value>(&r.history_json).expect("history json"),
            });
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }

    pub fn render(&self, decimal: bool) -> String {
        let fmt = |r: Rate| if decimal { format!("{r} ({})", r.decimal()) } else { r.to_string() };
        let lim = |b: Bound| format!("{}{}", fmt(b.value), if b.limit { " (limit)" } else { "" });
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "instance     |V| = {}  |E| = {}  |A| = {}  λ(A) = {}", s.vertices, s.edges, s.terminals, s.lambda);
        if s.pruned > 0 {
            let _ = writeln!(out, "pruned       {} vertices outside the core", s.pruned);
        }
        if self.short_circuit {
            let _ = writeln!(out, "λ(A) = 1: γ = π = 1");
            return out;
        }
        if let Some(x) = &self.exact {
            let _ = writeln!(out, "integer      k = {}", x.integer);
            let _ = writeln!(out, "half         π_1/2 = {}", fmt(x.half));
            let _ = writeln!(out, "fractional   π_f = {}", fmt(x.fractional));
            let _ = writeln!(out, "strength     η = {}", fmt(x.strength));
        }
        if let Some(b) = &self.bounds {
            if let Some(t) = b.three_terminal {
                let _ = writeln!(out, "lower bound  k ≥ {}, π_1/2 ≥ {}, π_f ≥ {}", t.integer, fmt(t.half), lim(t.fractional));
            }
            if let Some(t) = b.three_terminal_gain {
                let _ = writeln!(out, "gain bound   G_i ≤ {}, G_1/2 ≤ {}, G_f ≤ {}", fmt(t.integer), fmt(t.half), lim(t.fractional));
            }
            let _ = writeln!(out, "lower bound  π_1/2 ≥ {}, π_f ≥ {}", fmt(b.general.half_exact), lim(b.general.frac_limit));
            let _ = writeln!(out, "gain bound   G_f ≤ {}", lim(b.general_gain));
        }
        let br = self.bracket;
        let _ = writeln!(out, "γ bracket    {} ≤ γ ≤ {}{}", fmt(br.lower), fmt(br.upper), if br.tight { "  (tight)" } else { "" });
        if let Some(r) = &self.via_splitting {
            let _ = writeln!(
                out,
                "splitting    scale {}, {} relays removed, {} edges in G′",
                r.scale, r.relays_removed, r.split_edges
            );
            let _ = writeln!(
                out,
                "             k(G′) = {}, lifted {} trees, rate {} on G ({})",
                r.split_integer,
                r.lifted_trees,
                fmt(r.lifted_rate),
                if r.lifted_verified { "verified" } else { "REJECTED" }
            );
            let _ = writeln!(
                out,
                "             π_f(G′) = {}, lifted rate {} on G ({})",
                fmt(r.split_fractional),
                fmt(r.lifted_fractional),
                if r.lifted_fractional_verified { "verified" } else { "REJECTED" }
            );
        }
        out
    }
}

/// Graph summary line shared by several commands.
pub fn describe(g: &Multigraph) -> String {
    format!("|V| = {}  |E| = {}  total capacity {}", g.vertex_count(), g.edge_count(), g.total_capacity())
}
