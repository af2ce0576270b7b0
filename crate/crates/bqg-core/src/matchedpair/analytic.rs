//! Closed-form matched pairs on real parameter charts.
//!
//! Two presets ship:
//!
//! * `axb` — G₁ = G₂ = ℝ∖{0} under multiplication, with
//!   α_g(s) = gs/(s(g−1)+1) and β_s(g) = s(g−1)+1;
//! * `split` — G₁ = {(a,b) : a>0} with (a,b)(c,d) = (ac, ad+b/c),
//!   G₂ = (ℝ,+), with α_{(a,b)}(x) = x/(a(a+bx)) and the two-branch
//!   β_x(a,b) = ±(a+bx, b) keeping the first coordinate positive.
//!
//! Elements are `[f64; 2]` charts (one-dimensional groups use the first
//! slot). Every map carries a domain predicate; evaluations near the
//! excluded sets (any guarded quantity below 1e−6 in magnitude) return
//! `None` and samplers simply skip such tuples.

use super::MatchedPairError;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Magnitude below which a denominator or a group coordinate is treated as
/// sitting on the excluded null set.
pub const DOMAIN_GUARD: f64 = 1e-6;

pub type Chart = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticPreset {
    AxB,
    Split,
}

/// How one chart coordinate is sampled and measured.
#[derive(Debug, Clone, Copy)]
enum CoordKind {
    /// ℝ∖{0}, Haar dx/|x|; sampled log-uniform on [1/8, 8] with random sign.
    MultiplicativeSigned,
    /// (0,∞) inside the (a,b) chart; sampled log-uniform on [1/8, 8].
    MultiplicativePositive,
    /// (ℝ,+); sampled uniform on [−8, 8].
    Additive,
}

/// A group structure on a chart with its sampling recipe.
#[derive(Debug, Clone)]
pub struct ChartGroup {
    dim: usize,
    coords: Vec<CoordKind>,
    mul: fn(Chart, Chart) -> Option<Chart>,
    inv: fn(Chart) -> Option<Chart>,
    identity: Chart,
}

impl ChartGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> Chart {
        self.identity
    }

    pub fn mul(&self, a: Chart, b: Chart) -> Option<Chart> {
        (self.mul)(a, b)
    }

    pub fn inv(&self, a: Chart) -> Option<Chart> {
        (self.inv)(a)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Chart {
        let mut out = [0.0; 2];
        for (slot, kind) in out.iter_mut().zip(&self.coords) {
            *slot = match kind {
                CoordKind::MultiplicativeSigned => {
                    let mag = (rng.gen_range((0.125f64).ln()..(8.0f64).ln())).exp();
                    if rng.gen_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                }
                CoordKind::MultiplicativePositive => {
                    (rng.gen_range((0.125f64).ln()..(8.0f64).ln())).exp()
                }
                CoordKind::Additive => rng.gen_range(-8.0..8.0),
            };
        }
        out
    }

    /// Componentwise |x−y| ≤ tol·(1+|x|).
    pub fn approx_eq(&self, x: Chart, y: Chart, tol: f64) -> bool {
        (0..self.dim).all(|i| (x[i] - y[i]).abs() <= tol * (1.0 + x[i].abs()))
    }

    pub fn max_deviation(&self, x: Chart, y: Chart) -> f64 {
        (0..self.dim)
            .map(|i| (x[i] - y[i]).abs() / (1.0 + x[i].abs()))
            .fold(0.0, f64::max)
    }
}

fn guarded(x: f64) -> Option<f64> {
    (x.abs() >= DOMAIN_GUARD).then_some(x)
}

// ---- axb preset --------------------------------------------------------

fn axb_mul(a: Chart, b: Chart) -> Option<Chart> {
    Some([guarded(a[0] * b[0])?, 0.0])
}

fn axb_inv(a: Chart) -> Option<Chart> {
    Some([1.0 / guarded(a[0])?, 0.0])
}

fn axb_alpha(g: Chart, s: Chart) -> Option<Chart> {
    let den = guarded(s[0] * (g[0] - 1.0) + 1.0)?;
    Some([guarded(g[0] * s[0] / den)?, 0.0])
}

fn axb_beta(s: Chart, g: Chart) -> Option<Chart> {
    Some([guarded(s[0] * (g[0] - 1.0) + 1.0)?, 0.0])
}

// ---- split preset ------------------------------------------------------

fn split_g1_mul(a: Chart, b: Chart) -> Option<Chart> {
    // (a,b)(c,d) = (ac, ad + b/c)
    let c = guarded(b[0])?;
    Some([guarded(a[0] * c)?, a[0] * b[1] + a[1] / c])
}

fn split_g1_inv(a: Chart) -> Option<Chart> {
    Some([1.0 / guarded(a[0])?, -a[1]])
}

fn split_g2_mul(a: Chart, b: Chart) -> Option<Chart> {
    Some([a[0] + b[0], 0.0])
}

fn split_g2_inv(a: Chart) -> Option<Chart> {
    Some([-a[0], 0.0])
}

fn split_alpha(g: Chart, x: Chart) -> Option<Chart> {
    let (a, b) = (g[0], g[1]);
    let den = guarded(a * guarded(a + b * x[0])?)?;
    Some([x[0] / den, 0.0])
}

fn split_beta(x: Chart, g: Chart) -> Option<Chart> {
    let (a, b) = (g[0], g[1]);
    let v = guarded(a + b * x[0])?;
    if v > 0.0 {
        Some([v, b])
    } else {
        Some([-v, -b])
    }
}

/// A matched pair given by closed forms with domain predicates.
#[derive(Debug, Clone)]
pub struct AnalyticMatchedPair {
    pub preset: AnalyticPreset,
    g1: ChartGroup,
    g2: ChartGroup,
    alpha: fn(Chart, Chart) -> Option<Chart>,
    beta: fn(Chart, Chart) -> Option<Chart>,
}

impl AnalyticMatchedPair {
    pub fn preset(name: &str) -> Result<Self, MatchedPairError> {
        match name {
            "axb" => Ok(AnalyticMatchedPair {
                preset: AnalyticPreset::AxB,
                g1: ChartGroup {
                    dim: 1,
                    coords: vec![CoordKind::MultiplicativeSigned],
                    mul: axb_mul,
                    inv: axb_inv,
                    identity: [1.0, 0.0],
                },
                g2: ChartGroup {
                    dim: 1,
                    coords: vec![CoordKind::MultiplicativeSigned],
                    mul: axb_mul,
                    inv: axb_inv,
                    identity: [1.0, 0.0],
                },
                alpha: axb_alpha,
                beta: axb_beta,
            }),
            "split" => Ok(AnalyticMatchedPair {
                preset: AnalyticPreset::Split,
                g1: ChartGroup {
                    dim: 2,
                    coords: vec![CoordKind::MultiplicativePositive, CoordKind::Additive],
                    mul: split_g1_mul,
                    inv: split_g1_inv,
                    identity: [1.0, 0.0],
                },
                g2: ChartGroup {
                    dim: 1,
                    coords: vec![CoordKind::Additive],
                    mul: split_g2_mul,
                    inv: split_g2_inv,
                    identity: [0.0, 0.0],
                },
                alpha: split_alpha,
                beta: split_beta,
            }),
            other => Err(MatchedPairError::UnknownPreset(other.to_string())),
        }
    }

    /// Replaces β; used by mutation tests to confirm the relations decouple.
    pub fn with_beta(mut self, beta: fn(Chart, Chart) -> Option<Chart>) -> Self {
        self.beta = beta;
        self
    }

    pub fn g1(&self) -> &ChartGroup {
        &self.g1
    }

    pub fn g2(&self) -> &ChartGroup {
        &self.g2
    }

    /// α_g(h); `None` off the domain.
    pub fn alpha(&self, g: Chart, h: Chart) -> Option<Chart> {
        (self.alpha)(g, h)
    }

    /// β_h(g); `None` off the domain (subscript first).
    pub fn beta(&self, h: Chart, g: Chart) -> Option<Chart> {
        (self.beta)(h, g)
    }

    /// Draws tuples with a per-index seeded stream, skips tuples where any
    /// sub-expression leaves the domain, and asserts each compatibility
    /// relation to `|lhs−rhs| ≤ tol·(1+|lhs|)` componentwise.
    pub fn verify_compatibility_sampled(
        &self,
        n_samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<SampledCompatReport, MatchedPairError> {
        let mut report = SampledCompatReport::new(n_samples);
        for i in 0..n_samples {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            let g = self.g1.sample(&mut rng);
            let s = self.g1.sample(&mut rng);
            let h = self.g2.sample(&mut rng);
            let t = self.g2.sample(&mut rng);

            // α_{gs}(h) = α_g(α_s(h))
            report.tally(
                0,
                &self.g2,
                (|| {
                    let lhs = self.alpha(self.g1.mul(g, s)?, h)?;
                    let rhs = self.alpha(g, self.alpha(s, h)?)?;
                    Some((lhs, rhs))
                })(),
                tol,
                || format!("g={g:?}, s={s:?}, h={h:?}"),
            );
            // β_h(gs) = β_{α_s(h)}(g)·β_h(s)
            report.tally(
                1,
                &self.g1,
                (|| {
                    let lhs = self.beta(h, self.g1.mul(g, s)?)?;
                    let rhs = self
                        .g1
                        .mul(self.beta(self.alpha(s, h)?, g)?, self.beta(h, s)?)?;
                    Some((lhs, rhs))
                })(),
                tol,
                || format!("g={g:?}, s={s:?}, h={h:?}"),
            );
            // β_{ht}(g) = β_h(β_t(g))
            report.tally(
                2,
                &self.g1,
                (|| {
                    let lhs = self.beta(self.g2.mul(h, t)?, g)?;
                    let rhs = self.beta(h, self.beta(t, g)?)?;
                    Some((lhs, rhs))
                })(),
                tol,
                || format!("h={h:?}, t={t:?}, g={g:?}"),
            );
            // α_g(ht) = α_{β_t(g)}(h)·α_g(t)
            report.tally(
                3,
                &self.g2,
                (|| {
                    let lhs = self.alpha(g, self.g2.mul(h, t)?)?;
                    let rhs = self
                        .g2
                        .mul(self.alpha(self.beta(t, g)?, h)?, self.alpha(g, t)?)?;
                    Some((lhs, rhs))
                })(),
                tol,
                || format!("h={h:?}, t={t:?}, g={g:?}"),
            );
            // unit conditions
            report.tally(
                4,
                &self.g2,
                self.alpha(g, self.g2.identity()).map(|lhs| (lhs, self.g2.identity())),
                tol,
                || format!("g={g:?}"),
            );
            report.tally(
                5,
                &self.g1,
                self.beta(h, self.g1.identity()).map(|lhs| (lhs, self.g1.identity())),
                tol,
                || format!("h={h:?}"),
            );
        }
        if report.relations.iter().all(|r| r.defined == 0) {
            return Err(MatchedPairError::DegenerateSampler(n_samples));
        }
        Ok(report)
    }

    /// Sampled pointwise isometry criterion
    /// β_{α_h(t)}(g₁) = β_{α_{h·g₂}(t)}(g₁): draws tuples, skips those that
    /// leave the domain, and returns the first violating tuple if any.
    pub fn isometry_criterion_sampled(
        &self,
        n_samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<IsometrySampleReport, MatchedPairError> {
        let mut defined = 0;
        let mut skipped = 0;
        let mut witness = None;
        for i in 0..n_samples {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x150_3317);
            rng.set_stream(i as u64 + 1);
            let g1 = self.g1.sample(&mut rng);
            let g2 = self.g1.sample(&mut rng);
            let h = self.g1.sample(&mut rng);
            let t = self.g2.sample(&mut rng);
            let sides = (|| {
                let lhs = self.beta(self.alpha(h, t)?, g1)?;
                let rhs = self.beta(self.alpha(self.g1.mul(h, g2)?, t)?, g1)?;
                Some((lhs, rhs))
            })();
            match sides {
                None => skipped += 1,
                Some((lhs, rhs)) => {
                    defined += 1;
                    if !self.g1.approx_eq(lhs, rhs, tol) && witness.is_none() {
                        witness = Some(format!(
                            "g₁={g1:?}, g₂={g2:?}, h={h:?}, t={t:?}: {lhs:?} vs {rhs:?}"
                        ));
                    }
                }
            }
        }
        if defined == 0 {
            return Err(MatchedPairError::DegenerateSampler(n_samples));
        }
        Ok(IsometrySampleReport {
            holds: witness.is_none(),
            witness,
            defined,
            skipped,
        })
    }

    /// Sampled scan for a tuple moved by the chosen action. Returns the
    /// witness, or `None` when no witness turned up in `n_samples` draws
    /// (the analytic scan cannot certify triviality).
    pub fn triviality_witness(
        &self,
        which: ActionSide,
        n_samples: usize,
        seed: u64,
    ) -> Option<(Chart, Chart, Chart)> {
        for i in 0..n_samples {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
            rng.set_stream(i as u64 + 1);
            let g = self.g1.sample(&mut rng);
            let h = self.g2.sample(&mut rng);
            match which {
                ActionSide::Alpha => {
                    if let Some(out) = self.alpha(g, h) {
                        if !self.g2.approx_eq(h, out, 1e-9) {
                            return Some((g, h, out));
                        }
                    }
                }
                ActionSide::Beta => {
                    if let Some(out) = self.beta(h, g) {
                        if !self.g1.approx_eq(g, out, 1e-9) {
                            return Some((h, g, out));
                        }
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSide {
    Alpha,
    Beta,
}

/// Outcome of the sampled isometry-criterion scan.
#[derive(Debug, Clone)]
pub struct IsometrySampleReport {
    pub holds: bool,
    pub witness: Option<String>,
    pub defined: usize,
    pub skipped: usize,
}

pub const RELATION_NAMES: [&str; 6] = [
    "α_{gs}(h) = α_g(α_s(h))",
    "β_h(gs) = β_{α_s(h)}(g)·β_h(s)",
    "β_{ht}(g) = β_h(β_t(g))",
    "α_g(ht) = α_{β_t(g)}(h)·α_g(t)",
    "α_g(1) = 1",
    "β_h(1) = 1",
];

#[derive(Debug, Clone)]
pub struct RelationTally {
    pub name: &'static str,
    pub defined: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct SampledViolation {
    pub relation: &'static str,
    pub tuple: String,
    pub deviation: f64,
}

/// Tally of a sampled relation check.
#[derive(Debug, Clone)]
pub struct SampledCompatReport {
    pub samples: usize,
    pub relations: Vec<RelationTally>,
    pub violations: Vec<SampledViolation>,
    pub max_deviation: f64,
}

impl SampledCompatReport {
    fn new(samples: usize) -> Self {
        SampledCompatReport {
            samples,
            relations: RELATION_NAMES
                .iter()
                .map(|&name| RelationTally { name, defined: 0, skipped: 0 })
                .collect(),
            violations: Vec::new(),
            max_deviation: 0.0,
        }
    }

    fn tally(
        &mut self,
        relation: usize,
        group: &ChartGroup,
        sides: Option<(Chart, Chart)>,
        tol: f64,
        tuple: impl Fn() -> String,
    ) {
        match sides {
            None => self.relations[relation].skipped += 1,
            Some((lhs, rhs)) => {
                self.relations[relation].defined += 1;
                let dev = group.max_deviation(lhs, rhs);
                self.max_deviation = self.max_deviation.max(dev);
                if !group.approx_eq(lhs, rhs, tol) {
                    self.violations.push(SampledViolation {
                        relation: RELATION_NAMES[relation],
                        tuple: tuple(),
                        deviation: dev,
                    });
                }
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_defined(&self) -> usize {
        self.relations.iter().map(|r| r.defined).sum()
    }

    pub fn total_skipped(&self) -> usize {
        self.relations.iter().map(|r| r.skipped).sum()
    }
}
