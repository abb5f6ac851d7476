//! Element scans over a stabilizer chain.
//!
//! Enumeration is sharded on the deepest transversal; shards are visited in
//! order and results are merged in shard order, so output never depends on
//! scheduling. With the `parallel` feature the shards run on rayon's pool;
//! the `*_seq` variants are always available.

use std::ops::ControlFlow;

use crate::chain::StabChain;
use crate::perm::Perm;

fn shard_order(chain: &StabChain, rotate: usize) -> Vec<usize> {
    let n = chain.outer_len();
    (0..n).map(|k| (k + rotate) % n).collect()
}

fn find_in_shard(chain: &StabChain, shard: usize, pred: &(impl Fn(&Perm) -> bool + Sync)) -> Option<Perm> {
    match chain.visit(Some(shard), &mut |g| if pred(g) { ControlFlow::Break(g.clone()) } else { ControlFlow::Continue(()) }) {
        ControlFlow::Break(g) => Some(g),
        ControlFlow::Continue(()) => None,
    }
}

fn filter_shard(chain: &StabChain, shard: usize, pred: &(impl Fn(&Perm) -> bool + Sync)) -> Vec<Perm> {
    let mut out = Vec::new();
    let _ = chain.visit::<()>(Some(shard), &mut |g| {
        if pred(g) {
            out.push(g.clone());
        }
        ControlFlow::Continue(())
    });
    out
}

/// First element (in enumeration order, shards rotated by `rotate`) satisfying `pred`.
pub fn find_first_seq(chain: &StabChain, rotate: usize, pred: impl Fn(&Perm) -> bool + Sync) -> Option<Perm> {
    shard_order(chain, rotate).into_iter().find_map(|s| find_in_shard(chain, s, &pred))
}

pub fn filter_seq(chain: &StabChain, pred: impl Fn(&Perm) -> bool + Sync) -> Vec<Perm> {
    shard_order(chain, 0).into_iter().flat_map(|s| filter_shard(chain, s, &pred)).collect()
}

/// Folds every element with `map`, combining with `reduce` (which must be
/// associative and commutative).
pub fn map_reduce_seq<T: Send>(
    chain: &StabChain,
    identity: impl Fn() -> T + Sync,
    map: impl Fn(T, &Perm) -> T + Sync,
    reduce: impl Fn(T, T) -> T + Sync,
) -> T {
    shard_order(chain, 0)
        .into_iter()
        .map(|s| {
            let mut acc = Some(identity());
            let _ = chain.visit::<()>(Some(s), &mut |g| {
                acc = Some(map(acc.take().unwrap(), g));
                ControlFlow::Continue(())
            });
            acc.unwrap()
        })
        .fold(identity(), &reduce)
}

#[cfg(feature = "parallel")]
mod par {
    use super::*;
    use rayon::prelude::*;

    pub fn find_first(chain: &StabChain, rotate: usize, pred: impl Fn(&Perm) -> bool + Sync) -> Option<Perm> {
        shard_order(chain, rotate).into_par_iter().find_map_first(|s| find_in_shard(chain, s, &pred))
    }

    pub fn filter(chain: &StabChain, pred: impl Fn(&Perm) -> bool + Sync) -> Vec<Perm> {
        let shards: Vec<Vec<Perm>> =
            shard_order(chain, 0).into_par_iter().map(|s| filter_shard(chain, s, &pred)).collect();
        shards.into_iter().flatten().collect()
    }

    pub fn map_reduce<T: Send>(
        chain: &StabChain,
        identity: impl Fn() -> T + Sync + Send,
        map: impl Fn(T, &Perm) -> T + Sync,
        reduce: impl Fn(T, T) -> T + Sync + Send,
    ) -> T {
        shard_order(chain, 0)
            .into_par_iter()
            .map(|s| {
                let mut acc = Some(identity());
                let _ = chain.visit::<()>(Some(s), &mut |g| {
                    acc = Some(map(acc.take().unwrap(), g));
                    ControlFlow::Continue(())
                });
                acc.unwrap()
            })
            .reduce(&identity, &reduce)
    }
}

#[cfg(feature = "parallel")]
pub use par::{filter as filter_par, find_first as find_first_par, map_reduce as map_reduce_par};

pub fn find_first(chain: &StabChain, rotate: usize, pred: impl Fn(&Perm) -> bool + Sync) -> Option<Perm> {
    #[cfg(feature = "parallel")]
    {
        find_first_par(chain, rotate, pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_first_seq(chain, rotate, pred)
    }
}

pub fn filter(chain: &StabChain, pred: impl Fn(&Perm) -> bool + Sync) -> Vec<Perm> {
    #[cfg(feature = "parallel")]
    {
        filter_par(chain, pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        filter_seq(chain, pred)
    }
}

pub fn map_reduce<T: Send>(
    chain: &StabChain,
    identity: impl Fn() -> T + Sync + Send,
    map: impl Fn(T, &Perm) -> T + Sync,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    #[cfg(feature = "parallel")]
    {
        map_reduce_par(chain, identity, map, reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_reduce_seq(chain, identity, map, reduce)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s5() -> StabChain {
        StabChain::new(5, &[Perm::parse(5, "(1 2)").unwrap(), Perm::parse(5, "(1 2 3 4 5)").unwrap()])
    }

    #[test]
    fn sequential_and_default_scans_agree() {
        let chain = s5();
        let is_inv = |g: &Perm| g.order() == 2;
        assert_eq!(filter(&chain, is_inv), filter_seq(&chain, is_inv));
        assert_eq!(filter_seq(&chain, is_inv).len(), 25);
        assert_eq!(find_first(&chain, 3, is_inv), find_first_seq(&chain, 3, is_inv));
        let count = map_reduce(&chain, || 0usize, |a, g| a + (g.order() == 5) as usize, |a, b| a + b);
        assert_eq!(count, 24);
    }
}
