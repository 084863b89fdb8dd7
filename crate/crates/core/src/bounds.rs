//! Closed-form routing-capacity bounds in terms of the terminal
//! connectivity λ and terminal count a, the decompositions behind them,
//! and the γ bracket for a concrete instance.
//!
//! Values that only hold in the limit (an ε that vanishes as the number of
//! time slots grows) are returned as exact rationals tagged `limit: true`.

use serde::Serialize;

use crate::connectivity::terminal_connectivity;
use crate::error::{Error, Result};
use crate::multigraph::{validate, Multigraph, TerminalSet};
use crate::packing::fractional_capacity_lp;
use crate::rate::Rate;
use crate::strength::edge_strength;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: Rate,
    /// True when the value is approached but possibly not attained.
    pub limit: bool,
}

impl Bound {
    fn limit(value: Rate) -> Bound {
        Bound { value, limit: true }
    }
}

/// Lower bounds on the integer, half-integer and fractional routing
/// capacities of a three-terminal network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreeTerminalBounds {
    pub integer: u64,
    pub half: Rate,
    pub fractional: Bound,
}

pub fn three_terminal_lower_bounds(lambda: u64) -> ThreeTerminalBounds {
    assert!(lambda >= 1);
    ThreeTerminalBounds {
        integer: (6 * lambda - 3) / 8,
        half: Rate::new(((12 * lambda - 3) / 8) as i64, 2),
        fractional: Bound::limit(Rate::new(3 * lambda as i64, 4)),
    }
}

/// Upper bounds on the coding gain γ/π for three terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GainBounds {
    pub integer: Rate,
    pub half: Rate,
    pub fractional: Bound,
}

pub fn three_terminal_gain_bounds(lambda: u64) -> Result<GainBounds> {
    if lambda < 2 {
        return Err(Error::UndefinedGain);
    }
    let lb = three_terminal_lower_bounds(lambda);
    let half_floor = (12 * lambda - 3) / 8;
    if lb.integer == 0 || half_floor == 0 {
        return Err(Error::UndefinedGain);
    }
    Ok(GainBounds {
        integer: Rate::new(lambda as i64, lb.integer as i64),
        half: Rate::new(2 * lambda as i64, half_floor as i64),
        fractional: Bound::limit(Rate::new(4, 3)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition3 {
    pub lambda: u64,
    pub k: u64,
    pub delta: u64,
    /// `(6λ − 3) mod 8`
    pub residue: u64,
}

fn f3(k: u64) -> u64 {
    (8 * k + 3) / 6
}

/// `λ = ⌊(8k+3)/6⌋ + δ` with k maximal.
pub fn decompose3(lambda: u64) -> Decomposition3 {
    assert!(lambda >= 1);
    // k ≥ ⌊(6λ−3)/8⌋ always, so start there and walk up
    let mut k = (6 * lambda - 3) / 8;
    debug_assert!(f3(k) <= lambda);
    while f3(k + 1) <= lambda {
        k += 1;
    }
    let delta = lambda - f3(k);
    debug_assert!(delta <= 1);
    Decomposition3 { lambda, k, delta, residue: six_lambda_residue(lambda) }
}

/// `(6λ − 3) mod 8`, always odd.
pub fn six_lambda_residue(lambda: u64) -> u64 {
    assert!(lambda >= 1);
    (6 * lambda - 3) % 8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionGeneral {
    pub a: u64,
    pub lambda: u64,
    pub k: u64,
    pub delta: u64,
}

/// `f_a(k) = ⌊(2k(a−1) + a − 2)/a⌋`
pub fn f_general(a: u64, k: u64) -> u64 {
    (2 * k * (a - 1) + a - 2) / a
}

/// `λ = f_a(k) + δ` with k maximal such that `f_a(k) ≤ λ`.
pub fn decompose_general(lambda: u64, a: u64) -> DecompositionGeneral {
    assert!(lambda >= 1 && a >= 2);
    let mut k = (a * lambda - a + 2) / (2 * (a - 1));
    while k > 0 && f_general(a, k) > lambda {
        k -= 1;
    }
    while f_general(a, k + 1) <= lambda {
        k += 1;
    }
    let delta = lambda - f_general(a, k);
    debug_assert!(delta <= 1);
    DecompositionGeneral { a, lambda, k, delta }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    /// `(2k(a−1) + a − 2) mod a`
    pub residue: u64,
    /// `(aλ − a + 2) mod 2(a−1)`
    pub residue_prime: u64,
    pub delta: u64,
    pub holds: bool,
}

/// Checks `(Δ′ + Δ) mod 2(a−1) = aδ` and `Δ′ = 0 ⟺ Δ = 0 ∧ δ = 0`.
pub fn residue_identity(lambda: u64, a: u64) -> ResidueCheck {
    let d = decompose_general(lambda, a);
    let m = 2 * (a - 1);
    let residue = (2 * d.k * (a - 1) + a - 2) % a;
    let residue_prime = (a * lambda - a + 2) % m;
    let congruence = (residue_prime + residue) % m == a * d.delta;
    let zero = (residue_prime == 0) == (residue == 0 && d.delta == 0);
    ResidueCheck { residue, residue_prime, delta: d.delta, holds: congruence && zero }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneralBounds {
    /// Attained half-integer rate.
    pub half_exact: Rate,
    /// `λa / 2(a−1)`, approached by fractional routing.
    pub frac_limit: Bound,
}

pub fn general_lower_bounds(lambda: u64, a: u64) -> GeneralBounds {
    assert!(lambda >= 1 && a >= 2);
    let floor = (2 * a * lambda - a + 2) / (2 * (a - 1));
    GeneralBounds {
        half_exact: Rate::new(floor as i64, 2),
        frac_limit: Bound::limit(Rate::new((lambda * a) as i64, (2 * (a - 1)) as i64)),
    }
}

/// Fractional coding-gain bound `2(a−1)/a` for a terminals.
pub fn general_gain_bound(a: u64) -> Bound {
    assert!(a >= 2);
    Bound::limit(Rate::new(2 * (a as i64 - 1), a as i64))
}

/// Terminal connectivity, the trivial upper bound on the coding capacity.
pub fn capacity_upper_bound(g: &Multigraph, a: &TerminalSet) -> Result<u64> {
    validate(g, a)?;
    terminal_connectivity(g, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaBracket {
    pub lower: Rate,
    pub upper: Rate,
    pub tight: bool,
}

impl GammaBracket {
    pub fn new(lower: Rate, upper: Rate) -> GammaBracket {
        debug_assert!(lower <= upper);
        GammaBracket { lower, upper, tight: lower == upper }
    }
}

/// `LP ≤ γ ≤ min(λ, η)`; a unit-connectivity network has γ = 1.
pub fn gamma_bracket(g: &Multigraph, a: &TerminalSet) -> Result<GammaBracket> {
    let lambda = capacity_upper_bound(g, a)?;
    if lambda == 1 {
        return Ok(GammaBracket::new(Rate::ONE, Rate::ONE));
    }
    let (lp, _) = fractional_capacity_lp(g, a)?;
    let (eta, _) = edge_strength(g, a)?;
    Ok(GammaBracket::new(lp, eta.min(Rate::integer(lambda))))
}

/// Every formula applicable to a given `(λ, a)`, for tabulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSheet {
    pub lambda: u64,
    pub terminals: u64,
    /// λ = 1 forces γ = π = 1 and no formula is evaluated.
    pub short_circuit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_terminal: Option<ThreeTerminalBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_terminal_gain: Option<GainBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition3: Option<Decomposition3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general: Option<GeneralBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general_gain: Option<Bound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionGeneral>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residues: Option<ResidueCheck>,
}

pub fn bound_sheet(lambda: u64, terminals: u64) -> Result<BoundSheet> {
    if lambda == 0 {
        return Err(Error::OutOfRange("λ must be at least 1".into()));
    }
    if terminals < 2 {
        return Err(Error::OutOfRange("need at least 2 terminals".into()));
    }
    let mut sheet = BoundSheet {
        lambda,
        terminals,
        short_circuit: lambda == 1,
        three_terminal: None,
        three_terminal_gain: None,
        decomposition3: None,
        general: None,
        general_gain: None,
        decomposition: None,
        residues: None,
    };
    if lambda == 1 {
        return Ok(sheet);
    }
    if terminals == 3 {
        sheet.three_terminal = Some(three_terminal_lower_bounds(lambda));
        sheet.three_terminal_gain = three_terminal_gain_bounds(lambda).ok();
        sheet.decomposition3 = Some(decompose3(lambda));
    }
    sheet.general = Some(general_lower_bounds(lambda, terminals));
    sheet.general_gain = Some(general_gain_bound(terminals));
    sheet.decomposition = Some(decompose_general(lambda, terminals));
    sheet.residues = Some(residue_identity(lambda, terminals));
    Ok(sheet)
}

impl BoundSheet {
    pub fn render(&self, decimal: bool) -> String {
        let fmt = |r: Rate| if decimal { format!("{r} ({})", r.decimal()) } else { r.to_string() };
        let lim = |b: Bound| format!("{}{}", fmt(b.value), if b.limit { " (limit)" } else { "" });
        let mut out = format!("λ(A) = {}, |A| = {}\n", self.lambda, self.terminals);
        if self.short_circuit {
            out.push_str("γ = π = 1\n");
            return out;
        }
        let mut row = |label: &str, text: String| out.push_str(&format!("{label:<28}{text}\n"));
        if let Some(t) = self.three_terminal {
            row("three-terminal lower", format!("π_i ≥ {}   π_1/2 ≥ {}   π_f ≥ {}", t.integer, fmt(t.half), lim(t.fractional)));
        }
        if let Some(t) = self.three_terminal_gain {
            row("three-terminal gain", format!("G_i ≤ {}   G_1/2 ≤ {}   G_f ≤ {}", fmt(t.integer), fmt(t.half), lim(t.fractional)));
        }
        if let Some(d) = self.decomposition3 {
            row("three-terminal split", format!("k = {}   δ = {}   Δ = {}", d.k, d.delta, d.residue));
        }
        if let Some(g) = self.general {
            row("general lower", format!("π_1/2 ≥ {}   π_f ≥ {}", fmt(g.half_exact), lim(g.frac_limit)));
        }
        if let Some(g) = self.general_gain {
            row("general gain", format!("G_f ≤ {}", lim(g)));
        }
        if let Some(d) = self.decomposition {
            row("general split", format!("k = {}   δ = {}", d.k, d.delta));
        }
        if let Some(c) = self.residues {
            row(
                "residues",
                format!("Δ = {}   Δ′ = {}   identity {}", c.residue, c.residue_prime, if c.holds { "holds" } else { "FAILS" }),
            );
        }
        out
    }
}
