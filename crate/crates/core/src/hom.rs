//! Homomorphisms between permutation groups, coset actions and quotients.
//!
//! A homomorphism given by generator images is represented by its graph
//! `D = <(g_i, h_i)>` acting on `n + m` points. The map is well defined
//! exactly when `|D| = |domain|`; images, preimages and the kernel are read
//! off stabilizer chains of `D` with suitable base prefixes.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

#[derive(Clone)]
pub struct Homomorphism {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    images: Vec<Perm>,
    eval: StabChain,
    lift: OnceLock<StabChain>,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Homomorphism")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .finish_non_exhaustive()
    }
}

fn pair(a: &Perm, b: &Perm) -> Perm {
    let n = a.degree();
    let mut images: Vec<u32> = a.images().to_vec();
    images.extend(b.images().iter().map(|&x| x + n as u32));
    Perm::from_images_unchecked(images)
}

fn left(p: &Perm, n: usize) -> Perm {
    Perm::from_images_unchecked(p.images()[..n].to_vec())
}

fn right(p: &Perm, n: usize) -> Perm {
    Perm::from_images_unchecked(p.images()[n..].iter().map(|&x| x - n as u32).collect())
}

impl Homomorphism {
    /// The homomorphism sending `domain.generators()[i]` to `images[i]`.
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<Perm>) -> Result<Homomorphism> {
        if images.len() != domain.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generators but {} images",
                domain.generators().len(),
                images.len()
            )));
        }
        if let Some(h) = images.iter().find(|h| !codomain.contains(h)) {
            return Err(Error::NotHomomorphism(format!("image {h} is not in the codomain")));
        }
        let n = domain.degree();
        let graph: Vec<Perm> = domain.generators().iter().zip(&images).map(|(g, h)| pair(g, h)).collect();
        let prefix: Vec<usize> = (0..n).collect();
        let eval = StabChain::with_base_prefix(n + codomain.degree(), &graph, &prefix);
        let graph_order = eval.order()?;
        if graph_order != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "graph has order {graph_order}, domain has order {}",
                domain.order()
            )));
        }
        Ok(Homomorphism { domain: domain.clone(), codomain: codomain.clone(), images, eval, lift: OnceLock::new() })
    }

    /// The identity map of `g`.
    pub fn identity(g: &FiniteGroup) -> Homomorphism {
        Homomorphism::new(g, g, g.generators().to_vec()).expect("identity is a homomorphism")
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.images
    }

    pub fn image(&self, x: &Perm) -> Result<Perm> {
        if !self.domain.contains(x) {
            return Err(Error::NotSubgroup(format!("{x} is not in the domain")));
        }
        Ok(self.image_unchecked(x))
    }

    pub(crate) fn image_unchecked(&self, x: &Perm) -> Perm {
        let n = self.domain.degree();
        let (residue, _) = self.eval.sift(&pair(x, &self.codomain.identity()), 0);
        right(&residue, n).inverse()
    }

    /// `φ(H)` for a subgroup `H` of the domain.
    pub fn image_of(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        h.require_subgroup_of(&self.domain, "subgroup")?;
        let gens: Vec<Perm> = h.generators().iter().map(|x| self.image_unchecked(x)).collect();
        Ok(self.codomain.subgroup_from_elements(&gens))
    }

    pub fn image_group(&self) -> FiniteGroup {
        self.codomain.subgroup_from_elements(&self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_group().order() == self.codomain.order()
    }

    fn lift_chain(&self) -> &StabChain {
        self.lift.get_or_init(|| {
            let n = self.domain.degree();
            let m = self.codomain.degree();
            let graph: Vec<Perm> =
                self.domain.generators().iter().zip(&self.images).map(|(g, h)| pair(g, h)).collect();
            let prefix: Vec<usize> = (n..n + m).collect();
            StabChain::with_base_prefix(n + m, &graph, &prefix)
        })
    }

    fn codomain_levels(&self) -> usize {
        let n = self.domain.degree();
        self.lift_chain().levels().iter().take_while(|l| l.base() >= n).count()
    }

    pub fn kernel(&self) -> FiniteGroup {
        let n = self.domain.degree();
        let gens = self.lift_chain().stabilizer_generators(self.codomain_levels());
        self.domain.subgroup(gens.iter().map(|p| left(p, n)).collect())
    }

    /// Some `x` with `φ(x) = y`, or `None` if `y` is not in the image.
    pub fn lift(&self, y: &Perm) -> Option<Perm> {
        if !self.codomain.contains(y) {
            return None;
        }
        let n = self.domain.degree();
        let chain = self.lift_chain();
        let mut h = pair(&self.domain.identity(), y);
        for level in &chain.levels()[..self.codomain_levels()] {
            let beta = h.apply(level.base());
            h = h.compose(level.inv_rep_of(beta)?);
        }
        if !right(&h, n).is_identity() {
            return None;
        }
        Some(left(&h, n).inverse())
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, s: &FiniteGroup) -> Result<FiniteGroup> {
        let mut lifts = Vec::new();
        for y in s.generators() {
            lifts.push(self.lift(y).ok_or_else(|| Error::NotSubgroup(format!("{y} is not in the image")))?);
        }
        Ok(self.kernel().closure(&lifts))
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.codomain.degree() != other.domain.degree() {
            return Err(Error::DegreeMismatch { expected: other.domain.degree(), found: self.codomain.degree() });
        }
        let images = self.images.iter().map(|y| other.image(y)).collect::<Result<Vec<_>>>()?;
        Homomorphism::new(&self.domain, &other.codomain, images)
    }
}

/// The right cosets `Hx` of a subgroup `H` in `G`, with canonical
/// representatives chosen by minimal base images along `H`'s chain.
pub struct CosetSpace {
    h: FiniteGroup,
    reps: Vec<Perm>,
    index: HashMap<Perm, usize>,
    action: Vec<Perm>,
}

/// Canonical representative of the right coset `Hx`.
pub fn canonical_coset_rep(h: &FiniteGroup, x: &Perm) -> Perm {
    let mut c = x.clone();
    for level in h.chain().levels() {
        let mut best = (usize::MAX, 0);
        for (k, &delta) in level.orbit().iter().enumerate() {
            let image = c.apply(delta as usize);
            if image < best.0 {
                best = (image, k);
            }
        }
        c = level.reps()[best.1].compose(&c);
    }
    c
}

impl CosetSpace {
    pub fn new(g: &FiniteGroup, h: &FiniteGroup) -> CosetSpace {
        let id = canonical_coset_rep(h, &g.identity());
        let mut reps = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
        let mut k = 0;
        while k < reps.len() {
            for (s, gen) in g.generators().iter().enumerate() {
                let y = canonical_coset_rep(h, &reps[k].compose(gen));
                let next = reps.len();
                let target = *index.entry(y.clone()).or_insert(next);
                if target == next {
                    reps.push(y);
                }
                images[s].push(target as u32);
            }
            k += 1;
        }
        let action = images.into_iter().map(Perm::from_images_unchecked).collect();
        CosetSpace { h: h.clone(), reps, index, action }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.reps
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(&canonical_coset_rep(&self.h, x)).copied()
    }

    /// Permutations induced by the generators of `G`, in generator order.
    pub fn generator_action(&self) -> &[Perm] {
        &self.action
    }
}

/// `G` acting on the right cosets of `H`, with the action homomorphism.
pub fn coset_action(g: &FiniteGroup, h: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    h.require_subgroup_of(g, "H")?;
    let space = CosetSpace::new(g, h);
    let image = FiniteGroup::with_degree(space.len(), space.generator_action().to_vec())?;
    let hom = Homomorphism::new(g, &image, space.generator_action().to_vec())?;
    Ok((image, hom))
}

/// `G/N` as a permutation group on the cosets of `N`, with the projection.
pub fn quotient_with_projection(g: &FiniteGroup, n: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    n.require_normal_in(g, "N")?;
    coset_action(g, n)
}

/// Like [`quotient_with_projection`] but returns `G` itself when `N = 1`.
pub(crate) fn quotient_or_self(g: &FiniteGroup, n: &FiniteGroup) -> Result<(FiniteGroup, Homomorphism)> {
    if n.is_trivial() {
        return Ok((g.clone(), Homomorphism::identity(g)));
    }
    quotient_with_projection(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_map() {
        let s4 = FiniteGroup::symmetric(4);
        let c2 = FiniteGroup::cyclic(2);
        let images: Vec<Perm> = s4
            .generators()
            .iter()
            .map(|g| if g.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 1 { c2.generators()[0].clone() } else { c2.identity() })
            .collect();
        let sign = Homomorphism::new(&s4, &c2, images).unwrap();
        assert_eq!(sign.kernel(), FiniteGroup::alternating(4));
        assert!(sign.is_surjective());
        let t = Perm::parse(4, "(1 2 3 4)").unwrap();
        assert_eq!(sign.image(&t).unwrap(), c2.generators()[0]);
        let x = sign.lift(&c2.generators()[0]).unwrap();
        assert_eq!(sign.image(&x).unwrap(), c2.generators()[0]);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let s3 = FiniteGroup::symmetric(3);
        let c3 = FiniteGroup::cyclic(3);
        let bad = vec![c3.identity(), c3.generators()[0].clone()];
        assert!(matches!(Homomorphism::new(&s3, &c3, bad), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn quotients() {
        let s4 = FiniteGroup::symmetric(4);
        let v4 = s4.subgroup(vec![Perm::parse(4, "(1 2)(3 4)").unwrap(), Perm::parse(4, "(1 3)(2 4)").unwrap()]);
        let (q, pi) = quotient_with_projection(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(pi.kernel(), v4);
        let (q1, _) = quotient_with_projection(&s4, &s4.trivial_subgroup()).unwrap();
        assert_eq!(q1.order(), 24);
        let t = s4.subgroup(vec![Perm::parse(4, "(1 2)").unwrap()]);
        assert!(matches!(quotient_with_projection(&s4, &t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn coset_action_kernel_is_core() {
        let s4 = FiniteGroup::symmetric(4);
        let d8 = s4.subgroup(vec![Perm::parse(4, "(1 2 3 4)").unwrap(), Perm::parse(4, "(1 3)").unwrap()]);
        let (img, hom) = coset_action(&s4, &d8).unwrap();
        assert_eq!(img.degree(), 3);
        assert_eq!(img.order(), 6);
        assert_eq!(hom.kernel().order(), 4);
    }

    #[test]
    fn preimages_and_composition() {
        let s4 = FiniteGroup::symmetric(4);
        let v4 = s4.subgroup(vec![Perm::parse(4, "(1 2)(3 4)").unwrap(), Perm::parse(4, "(1 3)(2 4)").unwrap()]);
        let (q, pi) = quotient_with_projection(&s4, &v4).unwrap();
        let a3 = q.derived_subgroup();
        assert_eq!(pi.preimage(&a3).unwrap(), FiniteGroup::alternating(4));
        let (_, pi2) = quotient_with_projection(&q, &a3).unwrap();
        let composite = pi.then(&pi2).unwrap();
        assert_eq!(composite.kernel(), FiniteGroup::alternating(4));
    }
}
