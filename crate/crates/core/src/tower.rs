//! Towers `G_1 ← G_2 ← …` of finite groups with surjective projections:
//! finite presentations of profinite groups.
//!
//! Levels are numbered from 1 in the public API.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{CapKind, Error, Result};
use crate::fitting::{fitting_subgroup, fstar, layer};
use crate::group::FiniteGroup;
use crate::hom::{coset_action, quotient_or_self, Homomorphism};
use crate::lattice::{all_subgroups, is_primitive, primitive_quotient_kernels};
use crate::perm::Perm;
use crate::primes::is_prime;
use crate::supernatural::SupernaturalNumber;

pub struct Tower {
    levels: Vec<FiniteGroup>,
    projections: Vec<Homomorphism>,
    primes: Option<Vec<u64>>,
    composites: OnceLock<HashMap<(usize, usize), Homomorphism>>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tower").field("levels", &self.levels).field("primes", &self.primes).finish_non_exhaustive()
    }
}

/// An element of a given level, standing for its coset of the kernel of
/// the limit group onto that level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    pub level: usize,
    pub element: Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Invariant {
    Fitting,
    Layer,
    Fstar,
}

impl Tower {
    /// `projections[i]` maps level `i + 2` onto level `i + 1`; each must be
    /// a surjective homomorphism.
    pub fn new(levels: Vec<FiniteGroup>, projections: Vec<Homomorphism>, primes: Option<Vec<u64>>) -> Result<Tower> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("a tower needs at least one level".into()));
        }
        if projections.len() + 1 != levels.len() {
            return Err(Error::InvalidInput(format!(
                "{} levels need {} projections, found {}",
                levels.len(),
                levels.len() - 1,
                projections.len()
            )));
        }
        let tower = Tower { levels, projections, primes, composites: OnceLock::new() };
        tower.validate()?;
        Ok(tower)
    }

    /// The tower `G ← G ← … ← G` with identity maps.
    pub fn constant(g: &FiniteGroup, levels: usize) -> Result<Tower> {
        let projections = (1..levels).map(|_| Homomorphism::identity(g)).collect();
        Tower::new(vec![g.clone(); levels], projections, None)
    }

    /// Builds a tower from levels and generator images of each projection.
    pub fn from_images(levels: Vec<FiniteGroup>, images: Vec<Vec<Perm>>, primes: Option<Vec<u64>>) -> Result<Tower> {
        if images.len() + 1 != levels.len() {
            return Err(Error::InvalidInput(format!(
                "{} levels need {} projections, found {}",
                levels.len(),
                levels.len().saturating_sub(1),
                images.len()
            )));
        }
        let mut projections = Vec::new();
        for (i, imgs) in images.into_iter().enumerate() {
            let hom = Homomorphism::new(&levels[i + 1], &levels[i], imgs).map_err(|e| match e {
                Error::NotHomomorphism(msg) => Error::NotHomomorphism(format!("projection {}: {msg}", i + 1)),
                other => other,
            })?;
            projections.push(hom);
        }
        Tower::new(levels, projections, primes)
    }

    /// Checks surjectivity of every projection and builds all composites.
    pub fn validate(&self) -> Result<()> {
        for (i, pi) in self.projections.iter().enumerate() {
            if !pi.is_surjective() {
                return Err(Error::NotSurjective { level: i + 1 });
            }
        }
        let mut composites = HashMap::new();
        for j in 2..=self.len() {
            let mut hom = self.projections[j - 2].clone();
            composites.insert((j - 1, j), hom.clone());
            for i in (1..j - 1).rev() {
                hom = hom.then(&self.projections[i - 1])?;
                composites.insert((i, j), hom.clone());
            }
        }
        let _ = self.composites.set(composites);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.len() {
            return Err(Error::InvalidInput(format!("level {level} is outside 1..={}", self.len())));
        }
        Ok(())
    }

    pub fn level(&self, level: usize) -> Result<&FiniteGroup> {
        self.check_level(level)?;
        Ok(&self.levels[level - 1])
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    /// The projection from level `level + 1` onto `level`.
    pub fn projection(&self, level: usize) -> Result<&Homomorphism> {
        self.check_level(level + 1)?;
        Ok(&self.projections[level - 1])
    }

    pub fn primes(&self) -> Option<&[u64]> {
        self.primes.as_deref()
    }

    /// The composite projection from level `j` onto level `i < j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<&Homomorphism> {
        self.check_level(j)?;
        if i == 0 || i >= j {
            return Err(Error::InvalidInput(format!("no projection from level {j} to level {i}")));
        }
        Ok(&self.composites.get().expect("validated at construction")[&(i, j)])
    }

    /// Image of a subgroup of level `j` in level `i ≤ j`.
    pub fn project_subgroup(&self, h: &FiniteGroup, i: usize, j: usize) -> Result<FiniteGroup> {
        if i == j {
            return Ok(h.clone());
        }
        self.composite(i, j)?.image_of(h)
    }

    /// Some element of level `j` mapping onto `x`.
    pub fn lift(&self, x: &TowerElement, j: usize) -> Result<Perm> {
        self.check_level(x.level)?;
        self.check_level(j)?;
        if j < x.level {
            return Err(Error::InvalidInput(format!("cannot lift from level {} down to {j}", x.level)));
        }
        if j == x.level {
            return Ok(x.element.clone());
        }
        self.composite(x.level, j)?
            .lift(&x.element)
            .ok_or_else(|| Error::Internal("surjective projection failed to lift".into()))
    }

    pub fn element(&self, level: usize, element: Perm) -> Result<TowerElement> {
        let g = self.level(level)?;
        if !g.contains(&element) {
            return Err(Error::NotSubgroup(format!("{element} is not an element of level {level}")));
        }
        Ok(TowerElement { level, element })
    }

    pub fn invariant(&self, level: usize, inv: Invariant, caps: &Caps) -> Result<FiniteGroup> {
        let g = self.level(level)?;
        match inv {
            Invariant::Fitting => fitting_subgroup(g),
            Invariant::Layer => layer(g, caps),
            Invariant::Fstar => fstar(g, caps),
        }
    }

    /// `Inv(G_i) ∩ ⋂_{i<j≤J} π_{i,j}(Inv(G_j))`.
    pub fn stable_image(&self, i: usize, inv: Invariant, depth: usize, caps: &Caps) -> Result<FiniteGroup> {
        self.check_level(depth)?;
        if i == 0 || i > depth {
            return Err(Error::InvalidInput(format!("level {i} is outside 1..={depth}")));
        }
        let mut acc = self.invariant(i, inv, caps)?;
        for j in i + 1..=depth {
            if acc.is_trivial() {
                break;
            }
            let image = self.project_subgroup(&self.invariant(j, inv, caps)?, i, j)?;
            acc = acc.intersection(&image);
        }
        Ok(acc)
    }

    /// Finite-depth evidence of Fitting-degeneracy; see [`DegeneracyCertificate`].
    pub fn fd_certificate(&self, depth: usize, caps: &Caps) -> Result<DegeneracyCertificate> {
        self.check_level(depth)?;
        let fstars: Vec<FiniteGroup> = (1..=depth).map(|j| fstar(&self.levels[j - 1], caps)).collect::<Result<_>>()?;
        let mut per_level = Vec::new();
        for i in 1..depth {
            let mut acc = fstars[i - 1].clone();
            for j in i + 1..=depth {
                if acc.is_trivial() {
                    break;
                }
                acc = acc.intersection(&self.project_subgroup(&fstars[j - 1], i, j)?);
            }
            per_level.push(StableLevel { level: i, trivial: acc.is_trivial(), stable_image: acc });
        }
        let valid = per_level.iter().all(|l| l.trivial);
        Ok(DegeneracyCertificate { depth, per_level, valid })
    }

    /// Searches levels `x.level..=depth` for a normal subgroup `K` of `G_j`
    /// such that `G_j/K` is primitive and no element of `G_j` over `x` lies
    /// in the preimage of `F*(G_j/K)`.
    pub fn primitive_witness(&self, x: &TowerElement, depth: usize, caps: &Caps) -> Result<Option<Witness>> {
        self.check_level(x.level)?;
        self.check_level(depth)?;
        if x.element.is_identity() {
            return Err(Error::InvalidInput("the witness search needs a nontrivial element".into()));
        }
        for j in x.level..=depth {
            let g = &self.levels[j - 1];
            let y = self.lift(x, j)?;
            let over_x = self.kernel_over(x.level, j)?;
            for k in primitive_quotient_kernels(g, caps)? {
                let (excluded, quotient_order, fstar_order) = excluded_by(g, &k, &y, &over_x, caps)?;
                if excluded {
                    let w = Witness { level: j, kernel: k, lifted: y, quotient_order, fstar_order };
                    self.verify_witness(x, &w, caps)?;
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// Independent re-check of a witness: primitivity by a fresh
    /// computation, and exclusion of every lift of `x`.
    pub fn verify_witness(&self, x: &TowerElement, w: &Witness, caps: &Caps) -> Result<()> {
        let g = self.level(w.level)?;
        w.kernel.require_normal_in(g, "witness kernel")?;
        let (q, _) = quotient_or_self(g, &w.kernel)?;
        if !is_primitive(&q, caps)?.0 {
            return Err(Error::Internal(format!("witness quotient at level {} is not primitive", w.level)));
        }
        let y = self.lift(x, w.level)?;
        let over_x = self.kernel_over(x.level, w.level)?;
        if !excluded_by(g, &w.kernel, &y, &over_x, caps)?.0 {
            return Err(Error::Internal(format!("witness at level {} does not exclude the element", w.level)));
        }
        Ok(())
    }

    fn kernel_over(&self, i: usize, j: usize) -> Result<FiniteGroup> {
        if i == j {
            return Ok(self.levels[j - 1].trivial_subgroup());
        }
        Ok(self.composite(i, j)?.kernel())
    }

    /// `lcm(|G_1|, …, |G_J|)`.
    pub fn order(&self, depth: usize) -> Result<SupernaturalNumber> {
        self.check_level(depth)?;
        self.levels[..depth]
            .iter()
            .try_fold(SupernaturalNumber::one(), |acc, g| Ok(acc.lcm(&SupernaturalNumber::from_natural(g.order())?)))
    }

    /// `π_i(F(G_{i+1})) ≤ F(G_i)` and `π_i(F*(G_{i+1})) ≤ F*(G_i)` for every `i`.
    pub fn functoriality_holds(&self, caps: &Caps) -> Result<bool> {
        for i in 1..self.len() {
            for inv in [Invariant::Fitting, Invariant::Fstar] {
                let image = self.projections[i - 1].image_of(&self.invariant(i + 1, inv, caps)?)?;
                if !image.is_subgroup_of(&self.invariant(i, inv, caps)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_file(&self) -> TowerFile {
        TowerFile {
            levels: self
                .levels
                .iter()
                .map(|g| LevelFile {
                    degree: g.degree(),
                    generators: g.generators().iter().map(Perm::to_string).collect(),
                })
                .collect(),
            projections: self
                .projections
                .iter()
                .map(|p| ProjectionFile { generator_images: p.generator_images().iter().map(Perm::to_string).collect() })
                .collect(),
            metadata: Metadata { primes: self.primes.clone() },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("tower files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Tower> {
        let file: TowerFile = serde_json::from_str(text)?;
        file.to_tower()
    }
}

/// `(excluded, |G/K|, |F*(G/K)|)`: whether `y·over_x` misses the preimage
/// of `F*(G/K)`, i.e. whether `y ∉ L·over_x` with `L` that preimage.
fn excluded_by(
    g: &FiniteGroup,
    k: &FiniteGroup,
    y: &Perm,
    over_x: &FiniteGroup,
    caps: &Caps,
) -> Result<(bool, u128, u128)> {
    let (q, pi) = quotient_or_self(g, k)?;
    let fs = fstar(&q, caps)?;
    let preimage = pi.preimage(&fs)?;
    Ok((!preimage.join(over_x).contains(y), q.order(), fs.order()))
}

#[derive(Debug, Clone)]
pub struct StableLevel {
    pub level: usize,
    pub stable_image: FiniteGroup,
    pub trivial: bool,
}

/// Stable `F*` images at every level below the depth. A valid certificate
/// (all trivial) shows that `F*` of the limit group maps trivially to each
/// of these levels; it is a sufficient condition at this depth only and
/// does not by itself decide Fitting-degeneracy of the limit.
#[derive(Debug, Clone)]
pub struct DegeneracyCertificate {
    pub depth: usize,
    pub per_level: Vec<StableLevel>,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub level: usize,
    pub kernel: FiniteGroup,
    pub lifted: Perm,
    pub quotient_order: u128,
    pub fstar_order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFile {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionFile {
    pub generator_images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
}

/// The on-disk JSON form of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerFile {
    pub levels: Vec<LevelFile>,
    pub projections: Vec<ProjectionFile>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl TowerFile {
    pub fn to_tower(&self) -> Result<Tower> {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let gens = l.generators.iter().map(|s| Perm::parse(l.degree, s)).collect::<Result<Vec<_>>>()?;
                FiniteGroup::with_degree(l.degree, gens)
            })
            .collect::<Result<Vec<_>>>()?;
        let images = self
            .projections
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let degree = levels.get(i).map_or(1, FiniteGroup::degree);
                p.generator_images.iter().map(|s| Perm::parse(degree, s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tower::from_images(levels, images, self.metadata.primes.clone())
    }
}

/// Smallest degree of a faithful action on the cosets of a single
/// core-free subgroup, with the action. Groups above the subgroup cap use
/// the smaller of the action on moved points and the regular action.
pub fn minimal_faithful_degree(g: &FiniteGroup, caps: &Caps) -> Result<(usize, Homomorphism)> {
    if g.is_trivial() {
        let one = FiniteGroup::trivial(1);
        let images = vec![one.identity(); g.generators().len()];
        return Ok((1, Homomorphism::new(g, &one, images)?));
    }
    let (image, hom) = if g.order() <= caps.subgroup {
        let inv = all_subgroups(g, caps)?;
        let h = inv
            .tabs
            .iter()
            .zip(&inv.subgroups)
            .rev()
            .find(|(t, _)| t.order < inv.table.len() && inv.table.core(t).order == 1)
            .map(|(_, h)| h.clone())
            .unwrap_or_else(|| g.trivial_subgroup());
        coset_action(g, &h)?
    } else {
        let (moved_image, moved_hom) = restrict_to_moved_points(g)?;
        if (moved_image.degree() as u128) <= g.order() {
            (moved_image, moved_hom)
        } else {
            coset_action(g, &g.trivial_subgroup())?
        }
    };
    if hom.kernel().order() != 1 {
        return Err(Error::Internal("chosen action is not faithful".into()));
    }
    Ok((image.degree(), hom))
}

fn restrict_to_moved_points(g: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    let moved: Vec<usize> = (0..g.degree()).filter(|&x| g.generators().iter().any(|s| s.apply(x) != x)).collect();
    let mut relabel = vec![u32::MAX; g.degree()];
    for (k, &x) in moved.iter().enumerate() {
        relabel[x] = k as u32;
    }
    let images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| Perm::from_images(moved.iter().map(|&x| relabel[s.apply(x)]).collect()))
        .collect::<Result<_>>()?;
    let image = FiniteGroup::with_degree(moved.len().max(1), images.clone())?;
    let hom = Homomorphism::new(g, &image, images)?;
    Ok((image, hom))
}

/// Row-reduced basis of the span of `vectors` over `F_p`.
fn span_basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    for v in vectors {
        let mut v = v.clone();
        for (b, &c) in basis.iter().zip(&pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let s = inv(v[c]);
            for x in v.iter_mut() {
                *x = *x * s % p;
            }
            for (b, _) in basis.iter_mut().zip(&pivots) {
                let f = b[c];
                if f != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            basis.push(v);
            pivots.push(c);
        }
    }
    basis
}

/// The orbit of `v` under coordinate permutations, with the permutation
/// action of each generator on that orbit.
fn vector_orbit(v: &[u64], gens: &[Perm]) -> (Vec<Vec<u64>>, Vec<Perm>) {
    let act = |g: &Perm, v: &[u64]| {
        let mut w = vec![0; v.len()];
        for (a, &c) in v.iter().enumerate() {
            w[g.apply(a)] = c;
        }
        w
    };
    let mut orbit = vec![v.to_vec()];
    let mut index: HashMap<Vec<u64>, u32> = HashMap::from([(v.to_vec(), 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < orbit.len() {
        for (s, g) in gens.iter().enumerate() {
            let w = act(g, &orbit[k]);
            let next = orbit.len() as u32;
            let target = *index.entry(w.clone()).or_insert(next);
            if target == next {
                orbit.push(w);
            }
            images[s].push(target);
        }
        k += 1;
    }
    let action = images.into_iter().map(Perm::from_images_unchecked).collect();
    (orbit, action)
}

/// Generators of the translation module inside `F_p^n`: either one vector
/// per orbit of the action (the full permutation module) or a single
/// vector generating a smaller faithful submodule. Returns `(generators, dimension)`.
fn choose_module(action: &FiniteGroup, p: u64, group_order: u128, caps: &Caps) -> Result<(Vec<Vec<u64>>, u32)> {
    let n = action.degree();
    let full_order = (p as u128).checked_pow(n as u32).and_then(|q| q.checked_mul(group_order));
    if full_order.is_some_and(|o| o <= caps.tower_order) {
        let mut seen = vec![false; n];
        let mut gens = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            for x in action.chain().levels().first().map_or(vec![a as u32], |_| orbit_of(action, a)) {
                seen[x as usize] = true;
            }
            let mut e = vec![0; n];
            e[a] = 1;
            gens.push(e);
        }
        return Ok((gens, n as u32));
    }
    let mut best: Option<(u32, Vec<u64>)> = None;
    for a in 0..n {
        for b in a + 1..n {
            let mut v = vec![0; n];
            v[a] = 1;
            v[b] = p - 1;
            let (orbit, on_orbit) = vector_orbit(&v, action.generators());
            let dim = span_basis(&orbit, p).len() as u32;
            if best.as_ref().is_some_and(|(d, _)| *d <= dim) {
                continue;
            }
            let faithful = FiniteGroup::with_degree(orbit.len(), on_orbit)?.order() == group_order;
            if faithful {
                best = Some((dim, v));
            }
        }
    }
    let (dim, v) = best.ok_or_else(|| Error::cap(CapKind::TowerOrder, caps.tower_order, full_order.unwrap_or(u128::MAX)))?;
    let order = (p as u128).checked_pow(dim).and_then(|q| q.checked_mul(group_order)).unwrap_or(u128::MAX);
    caps.check(CapKind::TowerOrder, order)?;
    Ok((vec![v], dim))
}

fn orbit_of(g: &FiniteGroup, a: usize) -> Vec<u32> {
    let mut orbit = vec![a as u32];
    let mut seen = vec![false; g.degree()];
    seen[a] = true;
    let mut k = 0;
    while k < orbit.len() {
        for s in g.generators() {
            let y = s.apply(orbit[k] as usize);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y as u32);
            }
        }
        k += 1;
    }
    orbit
}

/// The prosoluble tower with `G_1 = C_{p_1}` and `G_{i+1} = V_{i+1} ⋊ G_i`,
/// where `V_{i+1}` is a faithful `F_{p_{i+1}} G_i`-module inside the
/// permutation module of a minimal-degree faithful action of `G_i`.
///
/// Each level is checked to satisfy `F(G_{i+1}) = V_{i+1}`.
pub fn build_degenerate_tower(primes: &[u64], levels: usize, caps: &Caps) -> Result<Tower> {
    if levels == 0 {
        return Err(Error::InvalidInput("at least one level is required".into()));
    }
    if primes.len() < levels {
        return Err(Error::InvalidInput(format!("{levels} levels need {levels} primes, got {}", primes.len())));
    }
    let primes = &primes[..levels];
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    if let Some(w) = primes.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(format!("consecutive primes must differ, found {} twice", w[0])));
    }
    let mut groups = vec![FiniteGroup::cyclic(primes[0] as usize)];
    let mut images = Vec::new();
    for &p in &primes[1..] {
        let g = groups.last().unwrap().clone();
        let (n, action) = minimal_faithful_degree(&g, caps)?;
        let acting = action.image_group();
        let (module_gens, dim) = choose_module(&acting, p, g.order(), caps)?;
        let pu = p as usize;
        let degree = n * pu;
        let translation = |v: &[u64]| {
            Perm::from_images_unchecked(
                (0..degree).map(|x| ((x / pu) * pu + (x % pu + v[x / pu] as usize) % pu) as u32).collect(),
            )
        };
        let lifted = |h: &Perm| {
            Perm::from_images_unchecked((0..degree).map(|x| (h.apply(x / pu) * pu + x % pu) as u32).collect())
        };
        let mut gens: Vec<Perm> = module_gens.iter().map(|v| translation(v)).collect();
        let mut proj: Vec<Perm> = vec![g.identity(); gens.len()];
        for (s, h) in g.generators().iter().zip(action.generator_images()) {
            gens.push(lifted(h));
            proj.push(s.clone());
        }
        let next = FiniteGroup::with_degree(degree, gens)?;
        let expected = (p as u128).pow(dim) * g.order();
        if next.order() != expected {
            return Err(Error::Internal(format!("level order {} differs from expected {expected}", next.order())));
        }
        let module = next.normal_closure(&next.generators()[..module_gens.len()])?;
        if fitting_subgroup(&next)? != module {
            return Err(Error::Internal(format!("Fitting subgroup of a level of order {} is not the module", next.order())));
        }
        groups.push(next);
        images.push(proj);
    }
    Tower::from_images(groups, images, Some(primes.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn faithful_degrees() {
        assert_eq!(minimal_faithful_degree(&FiniteGroup::cyclic(2), &caps()).unwrap().0, 2);
        assert_eq!(minimal_faithful_degree(&FiniteGroup::symmetric(3), &caps()).unwrap().0, 3);
        assert_eq!(minimal_faithful_degree(&FiniteGroup::quaternion(), &caps()).unwrap().0, 8);
        assert_eq!(minimal_faithful_degree(&FiniteGroup::symmetric(4), &caps()).unwrap().0, 4);
    }

    #[test]
    fn small_degenerate_tower() {
        let t = build_degenerate_tower(&[2, 3], 2, &caps()).unwrap();
        assert_eq!(t.level(1).unwrap().order(), 2);
        assert_eq!(t.level(2).unwrap().order(), 18);
        assert_eq!(fitting_subgroup(t.level(2).unwrap()).unwrap().order(), 9);
        assert_eq!(t.order(2).unwrap().to_string(), "2*3^2");
        assert!(t.stable_image(1, Invariant::Fstar, 2, &caps()).unwrap().is_trivial());
        let cert = t.fd_certificate(2, &caps()).unwrap();
        assert!(cert.valid);
        assert!(t.functoriality_holds(&caps()).unwrap());
    }

    #[test]
    fn single_level_tower() {
        let t = build_degenerate_tower(&[2], 1, &caps()).unwrap();
        assert_eq!(fitting_subgroup(t.level(1).unwrap()).unwrap(), *t.level(1).unwrap());
        assert!(Tower::constant(&FiniteGroup::trivial(1), 1).unwrap().fd_certificate(1, &caps()).unwrap().valid);
    }

    #[test]
    fn rejects_bad_prime_lists() {
        assert!(build_degenerate_tower(&[2, 2], 2, &caps()).is_err());
        assert!(build_degenerate_tower(&[2, 4], 2, &caps()).is_err());
        assert!(build_degenerate_tower(&[2], 2, &caps()).is_err());
    }

    #[test]
    fn constant_towers() {
        let s4 = FiniteGroup::symmetric(4);
        let t = Tower::constant(&s4, 3).unwrap();
        assert_eq!(t.stable_image(1, Invariant::Fstar, 3, &caps()).unwrap().order(), 4);
        assert!(!t.fd_certificate(3, &caps()).unwrap().valid);
        let x = t.element(1, Perm::parse(4, "(1 2)(3 4)").unwrap()).unwrap();
        assert!(t.primitive_witness(&x, 3, &caps()).unwrap().is_none());
        let id = TowerElement { level: 1, element: s4.identity() };
        assert!(t.primitive_witness(&id, 3, &caps()).is_err());
    }

    #[test]
    fn cyclic_chain_validates() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let t = Tower::from_images(vec![c2.clone(), c4.clone()], vec![vec![c2.generators()[0].clone()]], None).unwrap();
        assert_eq!(t.order(2).unwrap().to_string(), "2^2");
        let bad = Tower::from_images(vec![c4.clone(), c2.clone()], vec![vec![c4.generators()[0].clone()]], None);
        assert!(matches!(bad, Err(Error::NotHomomorphism(_))));
        let not_onto = Tower::from_images(vec![c2.clone(), c4], vec![vec![c2.identity()]], None);
        assert!(matches!(not_onto, Err(Error::NotSurjective { level: 1 })));
    }

    #[test]
    fn witness_for_first_level() {
        let t = build_degenerate_tower(&[2, 3], 2, &caps()).unwrap();
        let x = t.element(1, Perm::parse(2, "(1 2)").unwrap()).unwrap();
        let w = t.primitive_witness(&x, 2, &caps()).unwrap().unwrap();
        assert_eq!((w.level, w.kernel.order(), w.quotient_order, w.fstar_order), (2, 3, 6, 3));
    }

    #[test]
    fn json_round_trip() {
        let t = build_degenerate_tower(&[2, 3], 2, &caps()).unwrap();
        let text = t.to_json();
        let back = Tower::from_json(&text).unwrap();
        assert_eq!(back.to_file(), t.to_file());
        assert_eq!(back.to_json(), text);
        assert!(Tower::from_json("{\"levels\": 3}").is_err());
    }
}
