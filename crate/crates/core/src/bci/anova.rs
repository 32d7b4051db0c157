//! One-way and balanced two-way ANOVA with F-distribution p-values.

use super::special::f_upper_tail;
use super::BciError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effect {
    pub ss: f64,
    pub df: f64,
    pub ms: f64,
    pub f: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneWay {
    pub between: Effect,
    pub ss_within: f64,
    pub df_within: f64,
}

impl OneWay {
    pub fn f(&self) -> f64 {
        self.between.f
    }

    pub fn p(&self) -> f64 {
        self.between.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoWay {
    pub a: Effect,
    pub b: Effect,
    pub interaction: Effect,
    pub ss_within: f64,
    pub df_within: f64,
}

/// With no within-group variance, a nonzero effect has F = ∞ (p = 0) and a
/// zero effect has F = 0 (p = 1).
fn effect(ss: f64, df: f64, ms_within: f64, df_within: f64) -> Effect {
    let ms = ss / df;
    let f = if ms_within > 0.0 {
        ms / ms_within
    } else if ms > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Effect {
        ss,
        df,
        ms,
        f,
        p: f_upper_tail(f, df, df_within),
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub fn anova_oneway(groups: &[Vec<f64>]) -> Result<OneWay, BciError> {
    if groups.len() < 2 {
        return Err(BciError::Anova("need at least two groups".into()));
    }
    if let Some(g) = groups.iter().position(|g| g.len() < 2) {
        return Err(BciError::Anova(format!("group {} has fewer than two values", g + 1)));
    }
    let n: usize = groups.iter().map(Vec::len).sum();
    let grand = groups.iter().flatten().sum::<f64>() / n as f64;
    let means: Vec<f64> = groups.iter().map(|g| mean(g)).collect();
    let ss_between: f64 = groups.iter().zip(&means).map(|(g, m)| g.len() as f64 * (m - grand).powi(2)).sum();
    let ss_within: f64 = groups
        .iter()
        .zip(&means)
        .map(|(g, m)| g.iter().map(|v| (v - m).powi(2)).sum::<f64>())
        .sum();
    let df_between = (groups.len() - 1) as f64;
    let df_within = (n - groups.len()) as f64;
    Ok(OneWay {
        between: effect(ss_between, df_between, ss_within / df_within, df_within),
        ss_within,
        df_within,
    })
}

/// `cells[i][j]` holds the replicates at level `i` of A and `j` of B.
pub fn anova_twoway(cells: &[Vec<Vec<f64>>]) -> Result<TwoWay, BciError> {
    let la = cells.len();
    let lb = cells.first().map_or(0, Vec::len);
    if la < 2 || lb < 2 {
        return Err(BciError::Anova("each factor needs at least two levels".into()));
    }
    let r = cells[0][0].len();
    if cells.iter().any(|row| row.len() != lb || row.iter().any(|c| c.len() != r)) {
        return Err(BciError::Anova("unbalanced design".into()));
    }
    if r < 2 {
        return Err(BciError::Anova("need at least two replicates per cell".into()));
    }
    let rf = r as f64;
    let cell_mean: Vec<Vec<f64>> = cells.iter().map(|row| row.iter().map(|c| mean(c)).collect()).collect();
    let a_mean: Vec<f64> = cell_mean.iter().map(|row| mean(row)).collect();
    let b_mean: Vec<f64> = (0..lb).map(|j| cell_mean.iter().map(|row| row[j]).sum::<f64>() / la as f64).collect();
    let grand = mean(&a_mean);
    let ss_a = lb as f64 * rf * a_mean.iter().map(|m| (m - grand).powi(2)).sum::<f64>();
    let ss_b = la as f64 * rf * b_mean.iter().map(|m| (m - grand).powi(2)).sum::<f64>();
    let mut ss_ab = 0.0;
    let mut ss_w = 0.0;
    for i in 0..la {
        for j in 0..lb {
            let m = cell_mean[i][j];
            ss_ab += rf * (m - a_mean[i] - b_mean[j] + grand).powi(2);
            ss_w += cells[i][j].iter().map(|v| (v - m).powi(2)).sum::<f64>();
        }
    }
    let df_w = (la * lb * (r - 1)) as f64;
    let ms_w = ss_w / df_w;
    Ok(TwoWay {
        a: effect(ss_a, (la - 1) as f64, ms_w, df_w),
        b: effect(ss_b, (lb - 1) as f64, ms_w, df_w),
        interaction: effect(ss_ab, ((la - 1) * (lb - 1)) as f64, ms_w, df_w),
        ss_within: ss_w,
        df_within: df_w,
    })
}
