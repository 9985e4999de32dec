//! Closed-form spectral bounds, sensitivity predictors and assumption
//! checklists.
//!
//! Asymptotic statements are evaluated with every hidden constant set to 1.
//! Both sides of every comparison are reported so other constants can be
//! applied downstream. `log` is the natural logarithm; a few checks also
//! report the base-2 variant.

use crate::clustering::{nsc_kmeans, KMeansConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{brute_kway_expansion, MAX_KWAY_PARTS, MAX_KWAY_VERTICES};
use crate::spectra::{laplacian, residual_tolerance, symmetric_eigenvalues, LaplacianKind};

/// Constant of the improved Cheeger inequality in its explicit form.
pub const IMPROVED_CHEEGER_CONSTANT: f64 = 12.0 * std::f64::consts::SQRT_2;

/// `num / den` with `0/x = 0` and `x/0 = ∞` for `x > 0`.
pub fn ratio_or_infinity(num: f64, den: f64) -> f64 {
    if num <= 0.0 {
        0.0
    } else if den <= 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// `12√2 · k · λ₂ · √(Δ/λ_k)`, or `None` when `λ_k` is not positive.
pub fn improved_cheeger_bound(
    k: usize,
    lambda2: f64,
    lambda_k: f64,
    max_degree: usize,
) -> Option<f64> {
    (lambda_k > 0.0).then(|| {
        IMPROVED_CHEEGER_CONSTANT
            * k as f64
            * lambda2.max(0.0)
            * (max_degree as f64 / lambda_k).sqrt()
    })
}

/// `(λ₂/λ₃²)·Δ·n`.
pub fn usc2_predictor(lambda2: f64, lambda3: f64, max_degree: usize, n: usize) -> f64 {
    ratio_or_infinity(lambda2.max(0.0), lambda3 * lambda3) * max_degree as f64 * n as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSummary {
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda_max: f64,
    pub nu2: f64,
    pub nu3: f64,
    pub nu_k: f64,
    pub nu_k_plus_1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheegerInterval {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub volume: u64,
    pub k: usize,
    /// Approximation ratio assumed for k-means.
    pub alpha: f64,
    pub spectrum: SpectrumSummary,
    /// `ν₂/ν₃²`.
    pub nsc2_ratio: f64,
    /// `√ν_k/ν_{k+1}`.
    pub kmeans_ratio: f64,
    /// `(λ₂/λ₃²)·Δ·n`.
    pub usc2_predictor: f64,
    /// `(ν₂/ν₃²)·vol(G)`.
    pub nsc2_predictor: f64,
    /// `α·k⁵·(√ν_k/ν_{k+1})·vol(G)`.
    pub kmeans_predictor: f64,
    /// `λ₂/2 ≤ α(G) ≤ √(2Δλ₂)`.
    pub cut_ratio_cheeger: CheegerInterval,
    /// `ν₂/2 ≤ φ(G) ≤ √(2ν₂)`.
    pub conductance_cheeger: CheegerInterval,
    /// `12√2·k·λ₂·√(Δ/λ_k)`; `None` when `λ_k = 0`.
    pub improved_cheeger: Option<f64>,
    /// `12√2·k·ν₂/√ν_k`. The constant is carried over from the unnormalized
    /// case without proof, so this value is heuristic.
    pub improved_cheeger_normalized: Option<f64>,
    /// `ν_k/2 ≤ ρ_G(k)`.
    pub higher_order_lower: f64,
}

/// Evaluates every bound and predictor from the two spectra of `g`.
/// Requires `2 ≤ k < n`, `alpha ≥ 1` and no isolated vertex.
pub fn bounds_report(g: &Graph, k: usize, alpha: f64) -> Result<BoundsReport> {
    let n = g.n();
    if k < 2 || k >= n {
        return Err(Error::validation(format!(
            "bounds need 2 <= k < n, got k = {k}, n = {n}"
        )));
    }
    if alpha.is_nan() || alpha < 1.0 {
        return Err(Error::validation(format!(
            "approximation ratio must be >= 1, got {alpha}"
        )));
    }
    let lambda = snapped_spectrum(g, LaplacianKind::Unnormalized)?;
    let nu = snapped_spectrum(g, LaplacianKind::NormalizedRandomWalk)?;
    let clamp = |x: f64| x.max(0.0);
    let spectrum = SpectrumSummary {
        lambda2: clamp(lambda[1]),
        lambda3: clamp(lambda[2]),
        lambda_max: lambda[n - 1],
        nu2: clamp(nu[1]),
        nu3: clamp(nu[2]),
        nu_k: clamp(nu[k - 1]),
        nu_k_plus_1: clamp(nu[k]),
    };
    let s = &spectrum;
    let delta = g.max_degree();
    let volume = 2 * g.m() as u64;
    let nsc2_ratio = ratio_or_infinity(s.nu2, s.nu3 * s.nu3);
    let kmeans_ratio = ratio_or_infinity(s.nu_k.sqrt(), s.nu_k_plus_1);
    let scaled = |ratio: f64, factor: f64| if ratio == 0.0 { 0.0 } else { ratio * factor };
    Ok(BoundsReport {
        n,
        m: g.m(),
        max_degree: delta,
        volume,
        k,
        alpha,
        spectrum: *s,
        nsc2_ratio,
        kmeans_ratio,
        usc2_predictor: usc2_predictor(s.lambda2, s.lambda3, delta, n),
        nsc2_predictor: scaled(nsc2_ratio, volume as f64),
        kmeans_predictor: scaled(kmeans_ratio, alpha * (k as f64).powi(5) * volume as f64),
        cut_ratio_cheeger: CheegerInterval {
            lower: s.lambda2 / 2.0,
            upper: (2.0 * delta as f64 * s.lambda2).sqrt(),
        },
        conductance_cheeger: CheegerInterval {
            lower: s.nu2 / 2.0,
            upper: (2.0 * s.nu2).sqrt(),
        },
        improved_cheeger: improved_cheeger_bound(k, s.lambda2, clamp(lambda[k - 1]), delta),
        improved_cheeger_normalized: (s.nu_k > 0.0)
            .then(|| IMPROVED_CHEEGER_CONSTANT * k as f64 * s.nu2 / s.nu_k.sqrt()),
        higher_order_lower: s.nu_k / 2.0,
    })
}

/// Eigenvalues with those within the residual tolerance of zero set to zero.
fn snapped_spectrum(g: &Graph, kind: LaplacianKind) -> Result<Vec<f64>> {
    let m = laplacian(g, kind)?;
    let tol = residual_tolerance(&m);
    let mut values = symmetric_eigenvalues(&m)?;
    for x in values.iter_mut().filter(|x| x.abs() <= tol) {
        *x = 0.0;
    }
    Ok(values)
}

/// Scale of degree-normalized deletion effects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeletionScale {
    /// `max{√(p(1/τ + Γ)·ln n), ln n/τ}` with `Γ = max_i Σ_{j~i} 1/d_j²`.
    pub q: f64,
    /// `p + q`.
    pub threshold: f64,
}

/// Requires every vertex to have an edge.
pub fn normalized_deletion_scale(g: &Graph, p: f64) -> Result<DeletionScale> {
    let stats = g.stats();
    let gamma = stats.gamma.ok_or_else(|| {
        Error::domain("degree-normalized bounds need every vertex to have an edge")
    })?;
    let tau = stats.min_degree as f64;
    let log_n = (g.n() as f64).ln();
    let q = (p * (1.0 / tau + gamma) * log_n).sqrt().max(log_n / tau);
    Ok(DeletionScale {
        q,
        threshold: p + q,
    })
}

/// Shared reliability clause: `C(p) ≥ 1 − p_fail`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityClause {
    pub p_fail: f64,
    /// `p_fail ≤ 1`.
    pub p_fail_at_most_one: bool,
    /// `1 − p_fail`.
    pub required: f64,
    pub observed: Option<f64>,
    pub holds: Option<bool>,
}

impl ReliabilityClause {
    fn new(p_fail: f64, observed: Option<f64>) -> Self {
        let required = 1.0 - p_fail;
        ReliabilityClause {
            p_fail,
            p_fail_at_most_one: p_fail <= 1.0,
            required,
            observed,
            holds: observed.map(|c| c >= required),
        }
    }
}

/// Checklist for unnormalized 2-way clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnnormalizedAssumption {
    pub lambda2: f64,
    pub lambda3: f64,
    /// `max{24pΔ, 48 ln n}`.
    pub gap_threshold: f64,
    /// `max{24pΔ, 48 log₂ n}`.
    pub gap_threshold_log2: f64,
    /// `λ₃ ≥ gap_threshold`.
    pub gap_holds: bool,
    pub gap_holds_log2: bool,
    /// `p_fail = max{λ₂/λ₃², 1/n}`.
    pub reliability: ReliabilityClause,
}

/// Checklist for normalized 2-way clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedAssumption {
    pub nu2: f64,
    pub nu3: f64,
    /// `ln n / τ`.
    pub gap_threshold: f64,
    /// `ν₃ ≥ ln n/τ`.
    pub gap_holds: bool,
    /// `ln n / Δ`.
    pub p_threshold: f64,
    /// `p ≤ ln n/Δ`.
    pub p_holds: bool,
    /// `p_fail = max{ν₂/ν₃², 1/(2m)}`.
    pub reliability: ReliabilityClause,
}

/// Checklist for normalized k-way clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KWayAssumption {
    pub k: usize,
    pub nu_k: f64,
    pub nu_k_plus_1: f64,
    /// `ν_{k+1} ≥ ln n/τ`.
    pub gap_holds: bool,
    /// `p ≤ ln n/Δ`.
    pub p_holds: bool,
    /// `p_fail = max{k⁵·√ν_k/ν_{k+1}, 1/(2m)}`.
    pub reliability: ReliabilityClause,
    /// Exact `ρ_G(k)` for small graphs, otherwise the largest part
    /// conductance of the k-means clustering (an upper bound).
    pub expansion_estimate: f64,
    pub expansion_exact: bool,
    /// `ν_{k+1}/expansion_estimate`.
    pub expansion_ratio: f64,
    /// `expansion_ratio ≥ k³`.
    pub expansion_holds: bool,
}

/// The weak normalized condition `ν₃ ≥ 6(p + q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakNormalizedAssumption {
    pub scale: DeletionScale,
    pub nu3: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    pub p: f64,
    pub unnormalized: UnnormalizedAssumption,
    pub normalized: NormalizedAssumption,
    pub kway: KWayAssumption,
    pub weak: WeakNormalizedAssumption,
}

/// Evaluates all checklists at deletion probability `p` for `k` clusters.
/// `reliability`, when given, is an estimate of `C(p)`. Requires
/// `2 ≤ k < n` and no isolated vertex.
pub fn assumption_report(
    g: &Graph,
    p: f64,
    k: usize,
    reliability: Option<f64>,
) -> Result<AssumptionReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::validation(format!("p = {p} is not a probability")));
    }
    let b = bounds_report(g, k, 1.0)?;
    let s = b.spectrum;
    let n = g.n() as f64;
    let (log_n, log2_n) = (n.ln(), n.log2());
    let delta = g.max_degree() as f64;
    let tau = g.min_degree() as f64;
    let inv_2m = 1.0 / (2.0 * g.m() as f64);

    let gap_term = 24.0 * p * delta;
    let gap_threshold = gap_term.max(48.0 * log_n);
    let gap_threshold_log2 = gap_term.max(48.0 * log2_n);
    let unnormalized = UnnormalizedAssumption {
        lambda2: s.lambda2,
        lambda3: s.lambda3,
        gap_threshold,
        gap_threshold_log2,
        gap_holds: s.lambda3 >= gap_threshold,
        gap_holds_log2: s.lambda3 >= gap_threshold_log2,
        reliability: ReliabilityClause::new(
            ratio_or_infinity(s.lambda2, s.lambda3 * s.lambda3).max(1.0 / n),
            reliability,
        ),
    };

    let p_threshold = log_n / delta;
    let normalized = NormalizedAssumption {
        nu2: s.nu2,
        nu3: s.nu3,
        gap_threshold: log_n / tau,
        gap_holds: s.nu3 >= log_n / tau,
        p_threshold,
        p_holds: p <= p_threshold,
        reliability: ReliabilityClause::new(b.nsc2_ratio.max(inv_2m), reliability),
    };

    let (expansion_estimate, expansion_exact) = if g.n() <= MAX_KWAY_VERTICES && k <= MAX_KWAY_PARTS
    {
        (brute_kway_expansion(g, k)?.1, true)
    } else {
        let parts = nsc_kmeans(g, k, &KMeansConfig::default())?.parts();
        let mut worst: f64 = 0.0;
        for part in &parts {
            worst = worst.max(g.conductance(part)?);
        }
        (worst, false)
    };
    let expansion_ratio = ratio_or_infinity(s.nu_k_plus_1, expansion_estimate);
    let kway = KWayAssumption {
        k,
        nu_k: s.nu_k,
        nu_k_plus_1: s.nu_k_plus_1,
        gap_holds: s.nu_k_plus_1 >= log_n / tau,
        p_holds: p <= p_threshold,
        reliability: ReliabilityClause::new(
            ((k as f64).powi(5) * b.kmeans_ratio).max(inv_2m),
            reliability,
        ),
        expansion_estimate,
        expansion_exact,
        expansion_ratio,
        expansion_holds: expansion_ratio >= (k as f64).powi(3),
    };

    let scale = normalized_deletion_scale(g, p)?;
    let weak = WeakNormalizedAssumption {
        scale,
        nu3: s.nu3,
        holds: s.nu3 >= 6.0 * scale.threshold,
    };

    Ok(AssumptionReport {
        p,
        unnormalized,
        normalized,
        kway,
        weak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{disjoint_union, gen_complete, gen_cycle, gen_sbm};
    use crate::oracle::brute_min_cut_ratio;

    #[test]
    fn complete_graph_cheeger_lower_bound_is_tight() {
        let k4 = gen_complete(4).unwrap();
        let r = bounds_report(&k4, 2, 1.0).unwrap();
        assert!((r.spectrum.lambda2 - 4.0).abs() < 1e-12);
        let (_, alpha) = brute_min_cut_ratio(&k4).unwrap();
        assert!((r.cut_ratio_cheeger.lower - alpha).abs() < 1e-12);
    }

    #[test]
    fn disconnected_graph_has_zero_predictors() {
        let t = gen_complete(3).unwrap();
        let r = bounds_report(&disjoint_union(&[t.clone(), t]), 2, 1.0).unwrap();
        assert_eq!(r.usc2_predictor, 0.0);
        assert_eq!(r.nsc2_predictor, 0.0);
        assert_eq!(r.cut_ratio_cheeger.lower, 0.0);
    }

    #[test]
    fn predictor_edge_cases() {
        assert_eq!(ratio_or_infinity(0.0, 0.0), 0.0);
        assert_eq!(ratio_or_infinity(1.0, 0.0), f64::INFINITY);
        let mut last = 0.0;
        for i in 1..20 {
            let v = usc2_predictor(i as f64 * 0.1, 3.0, 5, 40);
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn zero_probability_reduces_gap_threshold() {
        let g = gen_cycle(10).unwrap();
        let a = assumption_report(&g, 0.0, 2, None).unwrap();
        assert_eq!(a.unnormalized.gap_threshold, 48.0 * 10f64.ln());
        assert!(a.unnormalized.reliability.holds.is_none());
        assert!(a.kway.expansion_exact);
    }

    #[test]
    fn regular_graph_deletion_scale() {
        let g = gen_cycle(12).unwrap();
        let p: f64 = 0.3;
        let s = normalized_deletion_scale(&g, p).unwrap();
        let ln = 12f64.ln();
        let want = (2.0 * p * ln / 2.0).sqrt().max(ln / 2.0);
        assert!((s.q - want).abs() < 1e-12);
        assert!(s.threshold >= p);
    }

    #[test]
    fn checklist_on_block_model() {
        let g = gen_sbm(2, 50, 0.8, 0.02, 3).unwrap().graph;
        let a = assumption_report(&g, 1e-3, 2, Some(0.99)).unwrap();
        assert_eq!(
            a.unnormalized.gap_holds,
            a.unnormalized.lambda3 >= a.unnormalized.gap_threshold
        );
        assert_eq!(a.weak.holds, a.weak.nu3 >= 6.0 * a.weak.scale.threshold);
        assert!(!a.kway.expansion_exact);
        assert!(a.kway.reliability.holds.is_some());
    }
}
