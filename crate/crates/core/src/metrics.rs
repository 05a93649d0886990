//! Quality measures for a detected community against a graph or a planted truth.

use crate::error::{Error, Result};
use crate::graph::{edge_counts, Community, NodeSet, SignedGraph};

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub beta: f64,
    /// Only available when a ground truth is supplied.
    pub ap: Option<f64>,
    pub ham: f64,
    pub cohesion: f64,
    pub opposition: f64,
    pub polarity: f64,
    pub sizes: (usize, usize),
    pub volume: f64,
}

fn precision(found: &NodeSet, truth: &NodeSet) -> f64 {
    if found.is_empty() {
        0.0
    } else {
        found.intersection_len(truth) as f64 / found.len() as f64
    }
}

/// Mean per-band precision, maximised over the two band assignments.
pub fn average_precision(c: &Community, truth: &Community) -> Result<f64> {
    if c.c1.is_empty() && c.c2.is_empty() {
        return Err(Error::EmptyBand);
    }
    let same = 0.5 * (precision(&c.c1, &truth.c1) + precision(&c.c2, &truth.c2));
    let swapped = 0.5 * (precision(&c.c1, &truth.c2) + precision(&c.c2, &truth.c1));
    Ok(same.max(swapped))
}

fn pos_density(internal: f64, size: usize) -> f64 {
    if size < 2 {
        0.0
    } else {
        2.0 * internal / (size as f64 * (size as f64 - 1.0))
    }
}

/// `(ham, cohesion, opposition)`.
pub fn ham(g: &SignedGraph, c: &Community) -> Result<(f64, f64, f64)> {
    if c.c1.is_empty() || c.c2.is_empty() {
        return Err(Error::EmptyBand);
    }
    let counts = edge_counts(g, &c.c1, &c.c2)?;
    let cohesion = 0.5 * (pos_density(counts.pos_in_1, c.c1.len()) + pos_density(counts.pos_in_2, c.c2.len()));
    let opposition = counts.neg_across / (c.c1.len() as f64 * c.c2.len() as f64);
    let h = if cohesion > 0.0 && opposition > 0.0 {
        2.0 * cohesion * opposition / (cohesion + opposition)
    } else {
        0.0
    };
    Ok((h, cohesion, opposition))
}

pub fn polarity(g: &SignedGraph, c: &Community) -> Result<f64> {
    let size = c.c1.len() + c.c2.len();
    if size == 0 {
        return Err(Error::EmptyBand);
    }
    let counts = edge_counts(g, &c.c1, &c.c2)?;
    Ok((counts.pos_in_1 + counts.pos_in_2 + 2.0 * counts.neg_across) / size as f64)
}

/// All metrics at once. HAM terms are 0 when a band is empty.
pub fn report(g: &SignedGraph, c: &Community, truth: Option<&Community>) -> Result<MetricReport> {
    let (h, cohesion, opposition) = match ham(g, c) {
        Ok(v) => v,
        Err(Error::EmptyBand) => (0.0, 0.0, 0.0),
        Err(e) => return Err(e),
    };
    Ok(MetricReport {
        beta: c.beta,
        ap: truth.map(|t| average_precision(c, t)).transpose()?,
        ham: h,
        cohesion,
        opposition,
        polarity: polarity(g, c)?,
        sizes: (c.c1.len(), c.c2.len()),
        volume: c.volume,
    })
}
