//! Radon–Nikodym data of the β-action against the Haar measure of G₁.
//!
//! θ(g, s) is the Jacobian of g ↦ β_{s⁻¹}(g) read in a chart where the Haar
//! measure of G₁ is Lebesgue: u = log|g| for the multiplicative line
//! (dμ = dg/|g|), and (−1/a, b) for the split preset's (a, b) group
//! (dμ = da db/a²). The default evaluation is central finite differences
//! in that chart; closed forms can be supplied as an override.

use super::analytic::{AnalyticMatchedPair, AnalyticPreset, Chart};
use super::MatchedPairError;

pub struct RnDerivative<'a> {
    pair: &'a AnalyticMatchedPair,
    closed_form: Option<fn(Chart, Chart) -> f64>,
}

impl<'a> RnDerivative<'a> {
    pub fn new(pair: &'a AnalyticMatchedPair) -> Self {
        RnDerivative { pair, closed_form: None }
    }

    /// Uses the supplied closed form instead of finite differences.
    pub fn with_closed_form(mut self, f: fn(Chart, Chart) -> f64) -> Self {
        self.closed_form = Some(f);
        self
    }

    /// Shipped closed forms for the two presets.
    pub fn closed_form_for(preset: AnalyticPreset) -> fn(Chart, Chart) -> f64 {
        match preset {
            // β_{1/s}(g) = (g−1+s)/s in the dg/|g| chart
            AnalyticPreset::AxB => |g, s| (g[0] / (g[0] - 1.0 + s[0])).abs(),
            // β_{−x}(a,b) = ±(a−bx, b) in the da db/a² chart
            AnalyticPreset::Split => |g, x| {
                let v = g[0] - g[1] * x[0];
                (g[0] * g[0]) / (v * v)
            },
        }
    }

    /// θ(g, s) = |d/dμ₁ β_{s⁻¹}(g)|.
    pub fn theta(&self, g: Chart, s: Chart) -> Result<f64, MatchedPairError> {
        if let Some(f) = self.closed_form {
            // still confirm the point is in the domain
            self.beta_sinv(g, s)?;
            return Ok(f(g, s));
        }
        self.theta_fd(g, s)
    }

    fn beta_sinv(&self, g: Chart, s: Chart) -> Result<Chart, MatchedPairError> {
        let sinv = self
            .pair
            .g2()
            .inv(s)
            .ok_or_else(|| MatchedPairError::OutsideDomain(format!("s⁻¹ at {s:?}")))?;
        self.pair
            .beta(sinv, g)
            .ok_or_else(|| MatchedPairError::OutsideDomain(format!("β_(s⁻¹) at g={g:?}, s={s:?}")))
    }

    /// Central finite differences of the chart map, step 1e−6 per coordinate
    /// (scaled by the coordinate's magnitude).
    pub fn theta_fd(&self, g: Chart, s: Chart) -> Result<f64, MatchedPairError> {
        let dim = self.pair.g1().dim();
        let to_chart = chart_map(self.pair.preset);
        let from_chart = chart_unmap(self.pair.preset);
        let u0 = to_chart(g);
        let mut jac = [[0.0f64; 2]; 2];
        for k in 0..dim {
            let h = 1e-6 * u0[k].abs().max(1.0);
            let mut up = u0;
            up[k] += h;
            let mut dn = u0;
            dn[k] -= h;
            let fu = to_chart(self.beta_sinv(from_chart(up), s)?);
            let fd = to_chart(self.beta_sinv(from_chart(dn), s)?);
            for r in 0..dim {
                jac[r][k] = (fu[r] - fd[r]) / (2.0 * h);
            }
        }
        let det = match dim {
            1 => jac[0][0],
            _ => jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0],
        };
        Ok(det.abs())
    }
}

/// Coordinates in which the Haar measure of G₁ is Lebesgue.
fn chart_map(preset: AnalyticPreset) -> fn(Chart) -> Chart {
    match preset {
        AnalyticPreset::AxB => |g| [g[0].abs().ln(), if g[0] < 0.0 { -1.0 } else { 1.0 }],
        AnalyticPreset::Split => |g| [-1.0 / g[0], g[1]],
    }
}

fn chart_unmap(preset: AnalyticPreset) -> fn(Chart) -> Chart {
    match preset {
        AnalyticPreset::AxB => |u| [u[1] * u[0].exp(), 0.0],
        AnalyticPreset::Split => |u| [-1.0 / u[0], u[1]],
    }
}
