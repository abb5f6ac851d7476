//! Sylow subgroups.
//!
//! Start from the `p`-part of an element of large `p`-power order, then
//! repeatedly adjoin a `p`-element outside `P` that normalizes `P`. Such an
//! element exists while `P` is not Sylow (a `p`-subgroup properly contained
//! in a Sylow subgroup is properly contained in its normalizer there), and
//! the scan over all of `G` finds one, so the loop always terminates with a
//! Sylow subgroup.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::primes::{is_prime, p_part};
use crate::scan;

/// True when the order of `g` is a power of `p`.
pub fn is_p_element(g: &Perm, p: u64) -> bool {
    g.cycle_lengths().iter().all(|&l| {
        let mut l = l as u64;
        while l.is_multiple_of(p) {
            l /= p;
        }
        l == 1
    })
}

/// The `p`-part of `g`: the unique power of `g` of `p`-power order with
/// `g = p-part · p'-part`.
pub fn p_part_of_element(g: &Perm, p: u64) -> Perm {
    let n = g.order();
    let pp = p_part(n as u128, p) as u64;
    let rest = n / pp;
    if pp == 1 {
        return g.pow(0);
    }
    // g^(rest * k) with rest * k ≡ 1 (mod pp).
    let k = (1..=pp).find(|k| (rest * k) % pp == 1).unwrap_or(1);
    g.pow((rest * k) as i64)
}

pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    sylow_impl(g, p, None)
}

/// Randomised starting point; the result is still a Sylow subgroup, but
/// different seeds give (generally) different conjugates.
pub fn sylow_subgroup_seeded(g: &FiniteGroup, p: u64, seed: u64) -> Result<FiniteGroup> {
    sylow_impl(g, p, Some(seed))
}

fn short_words(g: &FiniteGroup) -> Vec<Perm> {
    let gens = g.generators();
    let mut words: Vec<Perm> = gens.to_vec();
    for a in gens {
        for b in gens {
            words.push(a.compose(b));
        }
    }
    if gens.len() <= 4 {
        for a in gens {
            for b in gens {
                for c in gens {
                    words.push(a.compose(b).compose(c));
                }
            }
        }
    }
    words
}

fn sylow_impl(g: &FiniteGroup, p: u64, seed: Option<u64>) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(g.trivial_subgroup());
    }
    if target == g.order() {
        return Ok(g.clone());
    }
    let (candidates, rotate) = match seed {
        None => (short_words(g), 0),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let c: Vec<Perm> = (0..32).map(|_| g.chain().random_element(&mut rng)).collect();
            (c, (s as usize) % g.chain().outer_len())
        }
    };
    let start = candidates
        .iter()
        .map(|x| p_part_of_element(x, p))
        .max_by_key(|x| x.order())
        .filter(|x| !x.is_identity());
    let mut sylow = match start {
        Some(x) => g.subgroup(vec![x]),
        None => g.trivial_subgroup(),
    };
    while sylow.order() < target {
        let current = sylow.clone();
        let z = scan::find_first(g.chain(), rotate, |z| {
            is_p_element(z, p)
                && !current.contains(z)
                && current.generators().iter().all(|y| current.contains(&y.conjugate(z)))
        })
        .ok_or_else(|| Error::Internal(format!("no p-element normalizes a non-Sylow {p}-subgroup")))?;
        sylow = sylow.closure(&[z]);
    }
    Ok(sylow)
}
