//! Neutral vs. re-genderable sentence classifier.
//!
//! A linear max-margin model over TF-IDF character and word n-grams plus a
//! single gendered-word flag, trained by stochastic subgradient descent on
//! the L2-regularised hinge loss.

mod features;

use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morph::{ExceptionLexicon, Rewriter};
use crate::tagset::GenderClass;

pub use features::{FeatureConfig, FeatureSpace, SparseVector};

const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    /// L2 regularisation strength.
    pub lambda: f64,
    pub epochs: usize,
    /// Initial step size; step t is `1 / (lambda * (t + 1 / (lambda * eta0)))`.
    pub eta0: f64,
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            lambda: 1e-4,
            epochs: 10,
            eta0: 0.5,
            seed: 42,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::InvalidHyperparameter(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        if !(self.eta0.is_finite() && self.eta0 > 0.0) {
            return Err(Error::InvalidHyperparameter(format!(
                "eta0 must be positive, got {}",
                self.eta0
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidHyperparameter("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

fn sign(label: GenderClass) -> f64 {
    match label {
        GenderClass::Regenderable => 1.0,
        GenderClass::Neutral => -1.0,
    }
}

/// A trained linear classifier together with its feature space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierModel {
    format_version: u32,
    hyperparams: Hyperparams,
    space: FeatureSpace,
    weights: Vec<f64>,
    bias: f64,
}

/// Per-epoch diagnostics from [`train_with_report`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainReport {
    /// Regularised hinge objective on the training set after each epoch.
    pub objective: Vec<f64>,
}

/// Trains a classifier on `(text, label)` records.
pub fn train<S: AsRef<str>>(
    records: &[(S, GenderClass)],
    space: FeatureSpace,
    hyperparams: Hyperparams,
    lexicon: &ExceptionLexicon,
) -> Result<ClassifierModel> {
    train_with_report(records, space, hyperparams, lexicon).map(|(m, _)| m)
}

pub fn train_with_report<S: AsRef<str>>(
    records: &[(S, GenderClass)],
    space: FeatureSpace,
    hyperparams: Hyperparams,
    lexicon: &ExceptionLexicon,
) -> Result<(ClassifierModel, TrainReport)> {
    hyperparams.validate()?;
    let first = records.first().ok_or(Error::EmptyCorpus)?.1;
    if records.iter().all(|(_, l)| *l == first) {
        return Err(Error::SingleClass(first));
    }

    let rewriter = Rewriter::new(lexicon.clone());
    let examples: Vec<(SparseVector, f64)> = records
        .iter()
        .map(|(text, label)| (space.extract(text.as_ref(), &rewriter), sign(*label)))
        .collect();

    let Hyperparams {
        lambda,
        epochs,
        eta0,
        seed,
    } = hyperparams;
    let t0 = 1.0 / (lambda * eta0);

    // w = scale * v keeps the per-step shrinkage O(1).
    let mut v = vec![0.0f64; space.dimension()];
    let mut scale = 1.0f64;
    let mut bias = 0.0f64;
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrainReport::default();
    let mut t = 0u64;

    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (x, y) = &examples[i];
            let eta = 1.0 / (lambda * (t as f64 + t0));
            t += 1;
            let margin = y * (scale * x.dot(&v) + bias);
            scale *= 1.0 - eta * lambda;
            if margin < 1.0 {
                let step = eta * y / scale;
                for &(col, w) in x.entries() {
                    v[col as usize] += step * w;
                }
                bias += eta * y;
            }
            if scale < 1e-9 {
                v.iter_mut().for_each(|w| *w *= scale);
                scale = 1.0;
            }
        }
        let weights: Vec<f64> = v.iter().map(|w| w * scale).collect();
        report.objective.push(objective(&examples, &weights, bias, lambda));
    }

    let weights = v.into_iter().map(|w| w * scale).collect();
    let model = ClassifierModel {
        format_version: FORMAT_VERSION,
        hyperparams,
        space,
        weights,
        bias,
    };
    Ok((model, report))
}

fn objective(examples: &[(SparseVector, f64)], weights: &[f64], bias: f64, lambda: f64) -> f64 {
    let reg = 0.5 * lambda * weights.iter().map(|w| w * w).sum::<f64>();
    let loss: f64 = examples
        .iter()
        .map(|(x, y)| (1.0 - y * (x.dot(weights) + bias)).max(0.0))
        .sum();
    reg + loss / examples.len() as f64
}

impl ClassifierModel {
    pub fn hyperparams(&self) -> Hyperparams {
        self.hyperparams
    }

    pub fn space(&self) -> &FeatureSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// Signed margin of already-extracted features.
    pub fn score(&self, features: &SparseVector) -> f64 {
        features.dot(&self.weights) + self.bias
    }

    /// Label and margin; a positive margin means re-genderable.
    pub fn predict_with(&self, text: &str, rewriter: &Rewriter) -> (GenderClass, f64) {
        let score = self.score(&self.space.extract(text, rewriter));
        let label = if score > 0.0 {
            GenderClass::Regenderable
        } else {
            GenderClass::Neutral
        };
        (label, score)
    }

    pub fn predict(&self, text: &str, lexicon: &ExceptionLexicon) -> (GenderClass, f64) {
        self.predict_with(text, &Rewriter::new(lexicon.clone()))
    }

    /// Writes the model as versioned JSON. Floats round-trip exactly.
    pub fn save<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer(out, self)?;
        Ok(())
    }

    pub fn load<R: Read>(input: R) -> Result<Self> {
        let mut model: ClassifierModel = serde_json::from_reader(input)?;
        if model.format_version != FORMAT_VERSION {
            return Err(Error::ModelVersion(model.format_version));
        }
        if model.weights.len() != model.space.dimension() {
            return Err(Error::DimensionMismatch {
                weights: model.weights.len(),
                dimension: model.space.dimension(),
            });
        }
        model.space.build_index();
        Ok(model)
    }
}

/// Fits vocabularies and idf weights with the default configuration.
pub fn fit_feature_space<S: AsRef<str>>(texts: &[S]) -> Result<FeatureSpace> {
    FeatureSpace::fit(texts)
}

pub fn extract_features(text: &str, space: &FeatureSpace, lexicon: &ExceptionLexicon) -> SparseVector {
    space.extract(text, &Rewriter::new(lexicon.clone()))
}

/// Free-function form of [`ClassifierModel::predict`].
pub fn predict(model: &ClassifierModel, text: &str, lexicon: &ExceptionLexicon) -> (GenderClass, f64) {
    model.predict(text, lexicon)
}
