//! Two-class Fisher discriminant with shrinkage toward the identity.

use nalgebra::{DMatrix, DVector};

use super::BciError;

/// Scores `w·x + b`; positive means the second class.
#[derive(Debug, Clone, PartialEq)]
pub struct Lda {
    pub weights: Vec<f64>,
    pub bias: f64,
}

/// Relative ridge: `λ = RIDGE · trace(Σ) / dim`.
pub const RIDGE: f64 = 1e-6;

impl Lda {
    /// `class0` and `class1` hold one feature vector per sample.
    pub fn train(class0: &[Vec<f64>], class1: &[Vec<f64>]) -> Result<Self, BciError> {
        if class0.len() < 2 || class1.len() < 2 {
            return Err(BciError::TooFewEpochs {
                needed: 2,
                got: class0.len().min(class1.len()),
            });
        }
        let dim = class0[0].len();
        if dim == 0 || class0.iter().chain(class1).any(|x| x.len() != dim) {
            return Err(BciError::Signal("feature vectors differ in length".into()));
        }
        let mean = |set: &[Vec<f64>]| {
            let mut m = DVector::zeros(dim);
            for x in set {
                m += DVector::from_column_slice(x);
            }
            m / set.len() as f64
        };
        let (m0, m1) = (mean(class0), mean(class1));
        let mut scatter = DMatrix::zeros(dim, dim);
        for (set, m) in [(class0, &m0), (class1, &m1)] {
            for x in set {
                let d = DVector::from_column_slice(x) - m;
                scatter += &d * d.transpose();
            }
        }
        let mut cov = scatter / (class0.len() + class1.len() - 2) as f64;
        let trace = cov.trace();
        if trace <= 0.0 && (&m1 - &m0).norm() == 0.0 {
            return Err(BciError::IdenticalSamples);
        }
        let lambda = if trace > 0.0 { RIDGE * trace / dim as f64 } else { 1.0 };
        for i in 0..dim {
            cov[(i, i)] += lambda;
        }
        let chol = cov.cholesky().ok_or(BciError::IdenticalSamples)?;
        let w = chol.solve(&(&m1 - &m0));
        let bias = -w.dot(&((&m0 + &m1) / 2.0));
        Ok(Self {
            weights: w.iter().copied().collect(),
            bias,
        })
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    /// `true` for the second class. A zero score goes to the first class.
    pub fn predict(&self, x: &[f64]) -> bool {
        self.score(x) > 0.0
    }
}
