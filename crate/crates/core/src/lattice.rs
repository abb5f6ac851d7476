//! Normal-subgroup lattices, subgroup inventories and the invariants built
//! on them: minimal normal subgroups, socle, cores, Frattini subgroups,
//! primitivity and Hall subgroups.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::chain::StabChain;
use crate::error::{CapKind, Error, Result};
use crate::group::FiniteGroup;
use crate::hom::CosetSpace;
use crate::perm::Perm;
use crate::primes::{is_prime, p_part, prime_factors};
use crate::sylow::{sylow_subgroup, sylow_subgroup_seeded};
use crate::table::{Bits, SubTab, Table};

/// All normal subgroups of a group, sorted by order and then by elements.
pub struct NormalLattice {
    pub ambient: FiniteGroup,
    pub members: Vec<FiniteGroup>,
    pub(crate) table: Table,
    pub(crate) tabs: Vec<SubTab>,
}

/// All subgroups of a group, with maximality flags.
pub struct SubgroupInventory {
    pub ambient: FiniteGroup,
    pub subgroups: Vec<FiniteGroup>,
    pub maximal_flags: Vec<bool>,
    pub(crate) table: Table,
    pub(crate) tabs: Vec<SubTab>,
}

impl SubgroupInventory {
    pub fn maximal_subgroups(&self) -> impl Iterator<Item = &FiniteGroup> {
        self.subgroups.iter().zip(&self.maximal_flags).filter(|(_, &m)| m).map(|(h, _)| h)
    }
}

fn sort_dedup(mut tabs: Vec<SubTab>) -> Vec<SubTab> {
    tabs.sort_by_cached_key(SubTab::key);
    tabs.dedup_by(|a, b| a.bits == b.bits);
    tabs
}

/// Closes `seeds` under joins with each other, starting from the trivial group.
fn join_closure(table: &Table, seeds: &[SubTab]) -> Vec<SubTab> {
    let mut found: HashMap<Bits, usize> = HashMap::new();
    let mut members = vec![table.trivial()];
    found.insert(members[0].bits.clone(), 0);
    let mut k = 0;
    while k < members.len() {
        let m = members[k].clone();
        for s in seeds {
            if s.is_subgroup_of(&m) {
                continue;
            }
            let j = table.join(&m, s);
            if !found.contains_key(&j.bits) {
                found.insert(j.bits.clone(), members.len());
                members.push(j);
            }
        }
        k += 1;
    }
    sort_dedup(members)
}

pub fn normal_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<NormalLattice> {
    let table = Table::new(g, caps, CapKind::NormalLattice)?;
    let closures: Vec<SubTab> =
        sort_dedup(table.conjugacy_classes().iter().skip(1).map(|class| table.normal_closure(&class[..1])).collect());
    let tabs = join_closure(&table, &closures);
    let members = tabs.iter().map(|t| table.to_group(t)).collect();
    Ok(NormalLattice { ambient: g.clone(), members, table, tabs })
}

impl NormalLattice {
    /// Indices of the minimal members strictly above member `k`.
    pub(crate) fn minimal_above(&self, k: usize) -> Vec<usize> {
        let base = &self.tabs[k];
        let mut minimal: Vec<usize> = Vec::new();
        for (i, t) in self.tabs.iter().enumerate() {
            if t.order > base.order
                && base.bits.is_subset(&t.bits)
                && !minimal.iter().any(|&m| self.tabs[m].bits.is_subset(&t.bits))
            {
                minimal.push(i);
            }
        }
        minimal
    }

    /// Position of `h` in `members`, if it is one of them.
    pub fn index_of(&self, h: &FiniteGroup) -> Option<usize> {
        let t = self.table.from_group(h)?;
        self.tabs.iter().position(|m| m.bits == t.bits)
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<FiniteGroup> {
        self.minimal_above(0).into_iter().map(|i| self.members[i].clone()).collect()
    }
}

pub fn minimal_normal_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    if g.is_trivial() {
        return Err(Error::InvalidInput("the trivial group has no minimal normal subgroups".into()));
    }
    Ok(normal_subgroups(g, caps)?.minimal_normal_subgroups())
}

pub fn socle(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let mins = minimal_normal_subgroups(g, caps)?;
    Ok(FiniteGroup::join_all(g.degree(), &mins))
}

pub fn all_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<SubgroupInventory> {
    let table = Table::new(g, caps, CapKind::Subgroup)?;
    let cyclic: Vec<SubTab> = sort_dedup((1..table.len() as u32).map(|x| table.closure(&[x])).collect());
    let tabs = join_closure(&table, &cyclic);
    let top = tabs.len() - 1;
    let maximal_flags = (0..tabs.len())
        .map(|i| {
            i != top
                && !tabs.iter().enumerate().any(|(j, t)| {
                    j != top && t.order > tabs[i].order && tabs[i].bits.is_subset(&t.bits)
                })
        })
        .collect();
    let subgroups = tabs.iter().map(|t| table.to_group(t)).collect();
    Ok(SubgroupInventory { ambient: g.clone(), subgroups, maximal_flags, table, tabs })
}

/// Largest normal subgroup of `g` contained in `h`.
pub fn core(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    h.require_subgroup_of(g, "H")?;
    let mut c = h.clone();
    loop {
        let next = g.generators().iter().fold(c.clone(), |acc, s| acc.intersection(&c.conjugate_by(s)));
        if next.order() == c.order() {
            return Ok(c);
        }
        c = next;
    }
}

/// `Φ(S) = S' S^p` for a `p`-group `S`.
pub fn frattini_of_p_group(s: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    if !s.is_p_group(p) {
        return Err(Error::InvalidInput(format!("group of order {} is not a {p}-group", s.order())));
    }
    let powers: Vec<Perm> = s.generators().iter().map(|x| x.pow(p as i64)).collect();
    Ok(s.derived_subgroup().closure(&powers))
}

/// Intersection of all maximal subgroups (the group itself when trivial).
pub fn frattini(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let inv = all_subgroups(g, caps)?;
    let mut bits = inv.tabs.last().unwrap().bits.clone();
    for (t, &m) in inv.tabs.iter().zip(&inv.maximal_flags) {
        if m {
            bits = bits.intersect(&t.bits);
        }
    }
    Ok(inv.table.to_group(&inv.table.from_bits(&bits)))
}

/// Primitivity via the subgroup inventory: a maximal subgroup with trivial core.
fn primitive_by_inventory(inv: &SubgroupInventory) -> Option<FiniteGroup> {
    inv.tabs
        .iter()
        .zip(&inv.maximal_flags)
        .filter(|(_, &m)| m)
        .find(|(t, _)| inv.table.core(t).order == 1)
        .map(|(t, _)| inv.table.to_group(t))
}

/// Whether `g` is primitive, i.e. has a core-free maximal subgroup; the
/// witness is such a subgroup.
pub fn is_primitive(g: &FiniteGroup, caps: &Caps) -> Result<(bool, Option<FiniteGroup>)> {
    if g.is_trivial() {
        return Ok((false, None));
    }
    if g.order() <= caps.subgroup {
        let inv = all_subgroups(g, caps)?;
        let w = primitive_by_inventory(&inv);
        return Ok((w.is_some(), w));
    }
    let lattice = normal_subgroups(g, caps)?;
    primitive_quotient_by_structure(&lattice, 0, caps)
}

/// A complement `H` of `n/k` in `g/k` (so `k ≤ H`, `H ∩ n = k`, `Hn = g`),
/// searched over all lifts of an irredundant generating set of `g/n`.
pub fn complement_in_quotient(
    g: &FiniteGroup,
    n: &FiniteGroup,
    k: &FiniteGroup,
    caps: &Caps,
) -> Result<Option<FiniteGroup>> {
    let mut above: StabChain = n.chain().clone();
    let mut xs = Vec::new();
    for x in g.generators() {
        if above.add_generator(x) {
            xs.push(x.clone());
        }
    }
    let transversal = CosetSpace::new(n, k).representatives().to_vec();
    let t = transversal.len() as u128;
    let tuples = t.checked_pow(xs.len() as u32).unwrap_or(u128::MAX);
    caps.check(CapKind::Complement, tuples)?;
    let target = g.order() / n.order() * k.order();
    let mut digits = vec![0usize; xs.len()];
    loop {
        let mut chain = k.chain().clone();
        let mut gens = k.generators().to_vec();
        for (x, &d) in xs.iter().zip(&digits) {
            let y = x.compose(&transversal[d]);
            if chain.add_generator(&y) {
                gens.push(y);
            }
            if chain.order()? > target {
                break;
            }
        }
        if chain.order()? == target {
            return Ok(Some(g.subgroup(gens)));
        }
        // Next tuple in mixed-radix order.
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < transversal.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Decides primitivity of `G/K` (for `K` = member `k` of the lattice) from
/// its minimal normal subgroups. When primitive, also returns a core-free
/// maximal subgroup of `G/K` pulled back to `G`, if one was constructed.
fn primitive_quotient_by_structure(
    lattice: &NormalLattice,
    k: usize,
    caps: &Caps,
) -> Result<(bool, Option<FiniteGroup>)> {
    let g = &lattice.ambient;
    let kernel = &lattice.members[k];
    if kernel.order() == g.order() {
        return Ok((false, None));
    }
    let mins = lattice.minimal_above(k);
    let abelian = |i: usize| lattice.members[i].derived_subgroup().is_subgroup_of(kernel);
    match mins.as_slice() {
        [n] if !abelian(*n) => {
            // A unique nonabelian minimal normal subgroup forces primitivity;
            // a witness needs the inventory of the quotient.
            let (q, pi) = crate::hom::quotient_or_self(g, kernel)?;
            if q.order() <= caps.subgroup {
                let inv = all_subgroups(&q, caps)?;
                let w = primitive_by_inventory(&inv)
                    .ok_or_else(|| Error::Internal("monolithic quotient without core-free maximal".into()))?;
                Ok((true, Some(pi.preimage(&w)?)))
            } else {
                Ok((true, None))
            }
        }
        [n] => {
            let c = complement_in_quotient(g, &lattice.members[*n], kernel, caps)?;
            Ok((c.is_some(), c))
        }
        [a, b] if !abelian(*a) && !abelian(*b) => {
            let (q, pi) = crate::hom::quotient_or_self(g, kernel)?;
            if q.order() > caps.subgroup {
                return Err(Error::cap(CapKind::Subgroup, caps.subgroup, q.order()));
            }
            let inv = all_subgroups(&q, caps)?;
            let w = primitive_by_inventory(&inv).map(|w| pi.preimage(&w)).transpose()?;
            Ok((w.is_some(), w))
        }
        _ => Ok((false, None)),
    }
}

/// The kernels `K` with `G/K` primitive, i.e. the cores of the maximal
/// subgroups, in lattice order.
pub fn primitive_quotient_kernels(g: &FiniteGroup, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    if g.order() <= caps.subgroup {
        return primitive_kernels_by_inventory(g, caps);
    }
    primitive_kernels_by_structure(g, caps)
}

pub(crate) fn primitive_kernels_by_inventory(g: &FiniteGroup, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    let inv = all_subgroups(g, caps)?;
    let cores: Vec<SubTab> = inv
        .tabs
        .iter()
        .zip(&inv.maximal_flags)
        .filter(|(_, &m)| m)
        .map(|(t, _)| inv.table.core(t))
        .collect();
    Ok(sort_dedup(cores).iter().map(|t| inv.table.to_group(t)).collect())
}

pub(crate) fn primitive_kernels_by_structure(g: &FiniteGroup, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    let lattice = normal_subgroups(g, caps)?;
    let mut out = Vec::new();
    for k in 0..lattice.members.len() {
        if primitive_quotient_by_structure(&lattice, k, caps)?.0 {
            out.push(lattice.members[k].clone());
        }
    }
    Ok(out)
}

fn pi_part(order: u128, pi: &[u64]) -> u128 {
    pi.iter().fold(1, |acc, &p| acc * p_part(order, p))
}

/// A `π`-Hall subgroup of `g`, or `None` if there is none.
pub fn hall_subgroup(g: &FiniteGroup, pi: &[u64], caps: &Caps) -> Result<Option<FiniteGroup>> {
    hall_impl(g, pi, caps, None)
}

/// As [`hall_subgroup`], with seeded Sylow subgroups and conjugate order.
pub fn hall_subgroup_seeded(g: &FiniteGroup, pi: &[u64], caps: &Caps, seed: u64) -> Result<Option<FiniteGroup>> {
    hall_impl(g, pi, caps, Some(seed))
}

fn hall_impl(g: &FiniteGroup, pi: &[u64], caps: &Caps, seed: Option<u64>) -> Result<Option<FiniteGroup>> {
    if let Some(&p) = pi.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let primes: Vec<u64> =
        prime_factors(g.order()).into_iter().map(|(p, _)| p).filter(|p| pi.contains(p)).collect();
    let target = pi_part(g.order(), &primes);
    if target == 1 {
        return Ok(Some(g.trivial_subgroup()));
    }
    if target == g.order() {
        return Ok(Some(g.clone()));
    }
    if let Some(h) = hall_from_sylows(g, &primes, seed)? {
        return Ok(Some(h));
    }
    if g.is_soluble() {
        return Err(Error::Internal("Sylow products failed to give a Hall subgroup of a soluble group".into()));
    }
    let inv = all_subgroups(g, caps)?;
    Ok(inv.subgroups.into_iter().find(|h| h.order() == target))
}

/// Builds `H_1 ≤ H_2 ≤ …` with `H_{k+1} = H_k P` for a conjugate `P` of a
/// Sylow subgroup that permutes with `H_k`. In soluble groups some
/// conjugate always does (any two Hall subgroups for the same primes are
/// conjugate), so this only fails for insoluble groups.
fn hall_from_sylows(g: &FiniteGroup, primes: &[u64], seed: Option<u64>) -> Result<Option<FiniteGroup>> {
    let sylow = |p| match seed {
        Some(s) => sylow_subgroup_seeded(g, p, s),
        None => sylow_subgroup(g, p),
    };
    let mut h = sylow(primes[0])?;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    for &p in &primes[1..] {
        let s = sylow(p)?;
        let target = h.order() * s.order();
        let mut conjugators = g.elements();
        if let Some(rng) = rng.as_mut() {
            use rand::seq::SliceRandom;
            conjugators.shuffle(rng);
        }
        let mut seen = std::collections::HashSet::new();
        let mut next = None;
        for x in conjugators {
            let c = s.conjugate_by(&x);
            if !seen.insert(c.sorted_elements()) {
                continue;
            }
            let j = h.join(&c);
            if j.order() == target {
                next = Some(j);
                break;
            }
        }
        match next {
            Some(j) => h = j,
            None => return Ok(None),
        }
    }
    Ok(Some(h))
}

/// An element conjugating `a` onto `b`, found by scanning `g`.
pub fn conjugating_element(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Option<Perm> {
    if a.order() != b.order() {
        return None;
    }
    crate::scan::find_first(g.chain(), 0, |x| a.generators().iter().all(|y| b.contains(&y.conjugate(x))))
}
