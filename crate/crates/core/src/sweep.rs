//! Threshold rounding of a real vector into a polarized pair `({x ≥ t}, {x ≤ -t})`.
//!
//! [`fast_sweep`] evaluates every threshold from prefix counters over three orderings
//! (by `|x|`, `x` and `-x`) in `O(m + n log n)`. [`naive_sweep`] recounts each threshold
//! from scratch and serves as its reference.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{rayleigh, Community, NodeSet, SignedGraph};

const TIE_TOL: f64 = 1e-12;

fn check_input(g: &SignedGraph, x: &[f64]) -> Result<()> {
    if x.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            expected: g.node_count(),
            got: x.len(),
        });
    }
    if g.node_count() > u32::MAX as usize {
        return Err(Error::TooLarge {
            n: g.node_count(),
            max: u32::MAX as usize,
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("vector has non-finite entries".into()));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Node order by `|x|` descending, then `x` descending, then index.
pub fn abs_order(x: &[f64]) -> Vec<usize> {
    let mut keyed: Vec<(f64, f64, usize)> = x.iter().enumerate().map(|(i, &v)| (v.abs(), v, i)).collect();
    keyed.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)).then(a.2.cmp(&b.2)));
    keyed.into_iter().map(|k| k.2).collect()
}

fn signed_order(x: &[f64], sign: f64) -> Vec<usize> {
    let mut keyed: Vec<(f64, usize)> = x.iter().enumerate().map(|(i, &v)| (sign * v, i)).collect();
    keyed.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|k| k.1).collect()
}

/// Prefix counters. Every array has length `n + 1`; index `i` describes the top-`i` prefix.
///
/// `in*` arrays hold twice the internal weight, so that `cut = vol - in` per sign.
#[derive(Clone, Debug)]
pub struct SweepTable {
    pub order_by_abs: Vec<usize>,
    pub order_by_pos: Vec<usize>,
    pub order_by_neg: Vec<usize>,
    pub vol_abs: Vec<f64>,
    pub volpos_abs: Vec<f64>,
    pub volneg_abs: Vec<f64>,
    pub inpos_abs: Vec<f64>,
    pub inneg_abs: Vec<f64>,
    pub cutpos_abs: Vec<f64>,
    pub cutneg_abs: Vec<f64>,
    pub cut_abs: Vec<f64>,
    pub vol_x: Vec<f64>,
    pub inpos_x: Vec<f64>,
    pub inneg_x: Vec<f64>,
    pub cutpos_x: Vec<f64>,
    pub cutneg_x: Vec<f64>,
    pub vol_negx: Vec<f64>,
    pub inpos_negx: Vec<f64>,
    pub inneg_negx: Vec<f64>,
    pub cutpos_negx: Vec<f64>,
    pub cutneg_negx: Vec<f64>,
    pub j_of: Vec<usize>,
    pub k_of: Vec<usize>,
    /// Number of nonzero entries of `x`; only prefixes up to this length are candidates.
    pub nonzero: usize,
    /// Adjacency entries touched while filling the table.
    pub edge_visits: usize,
    abs_values: Vec<f64>,
}

struct Prefix {
    vol: Vec<f64>,
    volpos: Vec<f64>,
    volneg: Vec<f64>,
    inpos: Vec<f64>,
    inneg: Vec<f64>,
}

impl Prefix {
    fn accumulate(g: &SignedGraph, order: &[usize], slots: &[NodeSlot], o: usize) -> Prefix {
        let n = order.len();
        let mut p = Prefix {
            vol: vec![0.0; n + 1],
            volpos: vec![0.0; n + 1],
            volneg: vec![0.0; n + 1],
            inpos: vec![0.0; n + 1],
            inneg: vec![0.0; n + 1],
        };
        for (i, &u) in order.iter().enumerate() {
            let back = slots[u].back[o];
            p.vol[i + 1] = p.vol[i] + g.degree(u);
            p.volpos[i + 1] = p.volpos[i] + g.pos_degree(u);
            p.volneg[i + 1] = p.volneg[i] + g.neg_degree(u);
            p.inpos[i + 1] = p.inpos[i] + 2.0 * back[0];
            p.inneg[i + 1] = p.inneg[i] + 2.0 * back[1];
        }
        p
    }

    fn cuts(&self) -> (Vec<f64>, Vec<f64>) {
        let cp = self.volpos.iter().zip(&self.inpos).map(|(v, i)| v - i).collect();
        let cn = self.volneg.iter().zip(&self.inneg).map(|(v, i)| v - i).collect();
        (cp, cn)
    }
}

/// Per-node scratch for the edge pass, one cache line: rank in each ordering and the
/// positive/negative weight to neighbors ranked earlier.
#[derive(Clone, Copy, Default)]
#[repr(C, align(64))]
struct NodeSlot {
    rank: [u32; 3],
    back: [[f64; 2]; 3],
}

pub fn build_sweep_table(g: &SignedGraph, x: &[f64]) -> Result<SweepTable> {
    check_input(g, x)?;
    let n = g.node_count();
    let order_abs = abs_order(x);
    let order_pos = signed_order(x, 1.0);
    let order_neg = signed_order(x, -1.0);
    let mut slots = vec![NodeSlot::default(); n];
    for (o, order) in [&order_abs, &order_pos, &order_neg].into_iter().enumerate() {
        for (i, &u) in order.iter().enumerate() {
            slots[u].rank[o] = i as u32;
        }
    }

    // weight from each node to neighbors ranked before it, per ordering (the
    // lower-triangular part of the reordered adjacency)
    let mut visits = 0usize;
    for e in g.edges() {
        let (ru, rv) = (slots[e.u].rank, slots[e.v].rank);
        let (w, sign) = if e.w > 0.0 { (e.w, 0) } else { (-e.w, 1) };
        for o in 0..3 {
            visits += 1;
            let later = if ru[o] > rv[o] { e.u } else { e.v };
            slots[later].back[o][sign] += w;
        }
    }

    let pa = Prefix::accumulate(g, &order_abs, &slots, 0);
    let px = Prefix::accumulate(g, &order_pos, &slots, 1);
    let pn = Prefix::accumulate(g, &order_neg, &slots, 2);

    let mut j_of = vec![0; n + 1];
    let mut k_of = vec![0; n + 1];
    for (i, &u) in order_abs.iter().enumerate() {
        let nonneg = x[u] >= 0.0;
        j_of[i + 1] = j_of[i] + usize::from(nonneg);
        k_of[i + 1] = k_of[i] + usize::from(!nonneg);
    }

    let (cutpos_abs, cutneg_abs) = pa.cuts();
    let cut_abs = cutpos_abs.iter().zip(&cutneg_abs).map(|(a, b)| a + b).collect();
    let (cutpos_x, cutneg_x) = px.cuts();
    let (cutpos_negx, cutneg_negx) = pn.cuts();
    let abs_values = order_abs.iter().map(|&u| x[u].abs()).collect();
    Ok(SweepTable {
        nonzero: x.iter().filter(|&&v| v != 0.0).count(),
        order_by_abs: order_abs,
        order_by_pos: order_pos,
        order_by_neg: order_neg,
        vol_abs: pa.vol,
        volpos_abs: pa.volpos,
        volneg_abs: pa.volneg,
        inpos_abs: pa.inpos,
        inneg_abs: pa.inneg,
        cutpos_abs,
        cutneg_abs,
        cut_abs,
        vol_x: px.vol,
        inpos_x: px.inpos,
        inneg_x: px.inneg,
        cutpos_x,
        cutneg_x,
        vol_negx: pn.vol,
        inpos_negx: pn.inpos,
        inneg_negx: pn.inneg,
        cutpos_negx,
        cutneg_negx,
        j_of,
        k_of,
        edge_visits: visits,
        abs_values,
    })
}

impl SweepTable {
    pub fn len(&self) -> usize {
        self.order_by_abs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order_by_abs.is_empty()
    }

    /// `β` numerator of the top-`i` prefix split by sign.
    pub fn numerator(&self, i: usize) -> f64 {
        let (j, k) = (self.j_of[i], self.k_of[i]);
        // cutpos_x[j] + cutpos_negx[k] - cutpos_abs[i] is twice the positive weight across
        let pos_across2 = self.cutpos_x[j] + self.cutpos_negx[k] - self.cutpos_abs[i];
        pos_across2 + 0.5 * (self.inneg_x[j] + self.inneg_negx[k]) + self.cut_abs[i]
    }

    /// `β` of the top-`i` prefix; infinite for a zero-volume prefix.
    pub fn prefix_beta(&self, i: usize) -> f64 {
        let vol = self.vol_abs[i];
        if vol > 0.0 {
            self.numerator(i) / vol
        } else {
            f64::INFINITY
        }
    }

    /// `β` of every prefix `1..=n`.
    pub fn prefix_betas(&self) -> Vec<f64> {
        (1..=self.len()).map(|i| self.prefix_beta(i)).collect()
    }

    /// Prefix lengths that correspond to a threshold `t > 0`: ends of tie groups in `|x|`.
    pub fn candidates(&self) -> Vec<usize> {
        (1..=self.nonzero)
            .filter(|&i| i == self.nonzero || self.abs_values[i] < self.abs_values[i - 1])
            .collect()
    }

    /// Threshold `t` realised by prefix `i`.
    pub fn threshold(&self, i: usize) -> f64 {
        self.abs_values[i - 1]
    }

    pub fn bands(&self, i: usize) -> (NodeSet, NodeSet) {
        let (j, k) = (self.j_of[i], self.k_of[i]);
        (
            NodeSet::new(self.order_by_pos[..j].iter().copied()),
            NodeSet::new(self.order_by_neg[..k].iter().copied()),
        )
    }
}

/// Among `(i, β)` candidates take the minimum, preferring the longest prefix within a
/// relative tolerance.
fn pick(cands: &[(usize, f64)]) -> Option<usize> {
    let best = cands
        .iter()
        .map(|c| c.1)
        .filter(|b| b.is_finite())
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))?;
    let tol = TIE_TOL * (1.0 + best);
    cands
        .iter()
        .filter(|c| c.1 <= best + tol)
        .map(|c| c.0)
        .max()
}

/// Result of a sweep with its diagnostics.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub community: Community,
    pub threshold: f64,
    pub prefix: usize,
    pub edge_visits: usize,
}

pub fn fast_sweep_detailed(g: &SignedGraph, x: &[f64]) -> Result<SweepOutcome> {
    let table = build_sweep_table(g, x)?;
    let cands: Vec<(usize, f64)> = table
        .candidates()
        .into_iter()
        .map(|i| (i, table.prefix_beta(i)))
        .collect();
    let i = pick(&cands).ok_or(Error::ZeroVolume)?;
    let (c1, c2) = table.bands(i);
    let community = Community::evaluate(g, c1, c2)?;
    debug_assert!(
        {
            let r = rayleigh(g, x)?;
            community.beta <= (2.0 * r).sqrt() * (1.0 + 1e-9) + 1e-12
        },
        "sweep output violates beta <= sqrt(2R)"
    );
    Ok(SweepOutcome {
        community,
        threshold: table.threshold(i),
        prefix: i,
        edge_visits: table.edge_visits,
    })
}

/// Best threshold community from prefix counters in `O(m + n log n)`.
pub fn fast_sweep(g: &SignedGraph, x: &[f64]) -> Result<Community> {
    fast_sweep_detailed(g, x).map(|o| o.community)
}

/// `β` of every top-`i` prefix of the `|x|` order, each recounted from scratch.
pub fn naive_prefix_betas(g: &SignedGraph, x: &[f64]) -> Result<Vec<f64>> {
    check_input(g, x)?;
    let order = abs_order(x);
    (1..=order.len())
        .map(|i| {
            let top = &order[..i];
            let c1 = NodeSet::new(top.iter().copied().filter(|&u| x[u] >= 0.0));
            let c2 = NodeSet::new(top.iter().copied().filter(|&u| x[u] < 0.0));
            let vol = g.volume(&c1) + g.volume(&c2);
            if vol > 0.0 {
                crate::graph::beta(g, &c1, &c2)
            } else {
                Ok(f64::INFINITY)
            }
        })
        .collect()
}

/// Reference sweep: every distinct positive threshold `t` evaluated from scratch.
pub fn naive_sweep(g: &SignedGraph, x: &[f64]) -> Result<Community> {
    check_input(g, x)?;
    let mut ts: Vec<f64> = x.iter().map(|v| v.abs()).filter(|&t| t > 0.0).collect();
    ts.sort_by(|a, b| b.total_cmp(a));
    ts.dedup();
    let mut evaluated = Vec::with_capacity(ts.len());
    for &t in &ts {
        let c1 = NodeSet::new((0..x.len()).filter(|&u| x[u] >= t));
        let c2 = NodeSet::new((0..x.len()).filter(|&u| x[u] <= -t));
        let size = c1.len() + c2.len();
        let vol = g.volume(&c1) + g.volume(&c2);
        let b = if vol > 0.0 {
            crate::graph::beta(g, &c1, &c2)?
        } else {
            f64::INFINITY
        };
        evaluated.push((size, b, c1, c2));
    }
    let cands: Vec<(usize, f64)> = evaluated.iter().map(|e| (e.0, e.1)).collect();
    let size = pick(&cands).ok_or(Error::ZeroVolume)?;
    let (_, _, c1, c2) = evaluated.into_iter().find(|e| e.0 == size).unwrap();
    Community::evaluate(g, c1, c2)
}
