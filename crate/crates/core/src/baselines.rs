//! Head-to-head sweep profiles: run any baseline ordering through the same
//! higher-order scoring machinery as the tensor method. The tensor defines
//! `cut3` and `vol3` no matter where the ordering came from, so profiles are
//! directly comparable.

use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::orderings::{
    al_ordering, co_ordering, dl_ordering, random_ordering, sub_dl_ordering, ul_ordering,
};
use crate::partition::Method;
use crate::sweep::{best_cut, sweep, ScoreKind, SweepProfile};
use crate::tensor::MotifTensor;

/// Sweep one baseline ordering against the graph and tensor. For the
/// co-clustering method both singular vectors are swept and the better
/// profile (by the requested score's best cut) is returned, its method tag
/// naming the winning vector.
pub fn run_baseline(
    g: &DirectedGraph,
    method: Method,
    t: &MotifTensor,
    score_kind: ScoreKind,
    k_min: usize,
    seed: u64,
) -> Result<SweepProfile> {
    let profile = match method {
        Method::Ul => sweep(g, t, &ul_ordering(g)?, score_kind, k_min),
        Method::Dl => sweep(g, t, &dl_ordering(g)?, score_kind, k_min),
        Method::Al => sweep(g, t, &al_ordering(g)?, score_kind, k_min),
        Method::Random => sweep(g, t, &random_ordering(g.n(), seed), score_kind, k_min),
        Method::Co => {
            let (left, right) = co_ordering(g)?;
            let p_left = sweep(g, t, &left, score_kind, k_min);
            let p_right = sweep(g, t, &right, score_kind, k_min);
            let s_left = best_cut(&p_left, score_kind)?.best_score;
            let s_right = best_cut(&p_right, score_kind)?.best_score;
            if s_left <= s_right {
                p_left
            } else {
                p_right
            }
        }
        Method::SubDl => sub_dl(g, t, score_kind, k_min)?,
        Method::Tsc => {
            return Err(crate::error::Error::InvalidConfig(
                "tensor method is not a baseline; use the partition module".into(),
            ))
        }
    };
    Ok(profile)
}

/// Directed Laplacian on the motif-edge core: restrict to edges in at least
/// one motif instance, keep the largest strongly connected component, order
/// it, and append the remaining nodes in index order.
pub fn sub_dl(
    g: &DirectedGraph,
    t: &MotifTensor,
    score_kind: ScoreKind,
    k_min: usize,
) -> Result<SweepProfile> {
    let ord = sub_dl_ordering(g, t)?;
    Ok(sweep(g, t, &ord, score_kind, k_min))
}
