//! Finite permutation groups.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::{lcm, Perm};
use crate::primes::{prime_factors, p_part};
use crate::scan;

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: u128,
    derived: OnceLock<FiniteGroup>,
}

/// An immutable permutation group with an exact stabilizer chain.
///
/// Cloning is cheap. Equality is equality of subgroups of the same
/// symmetric group (same degree, same elements).
#[derive(Clone)]
pub struct FiniteGroup(Arc<Inner>);

/// Summary of the structure predicates of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_perfect: bool,
    pub exponent: u64,
}

impl FiniteGroup {
    /// The group generated by `gens`; an empty list gives the trivial group
    /// on one point.
    pub fn new(gens: Vec<Perm>) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(1, Perm::degree);
        FiniteGroup::with_degree(degree, gens)
    }

    pub fn with_degree(degree: usize, gens: Vec<Perm>) -> Result<FiniteGroup> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order()?;
        Ok(FiniteGroup(Arc::new(Inner { degree, gens, chain, order, derived: OnceLock::new() })))
    }

    pub(crate) fn from_trusted(degree: usize, gens: Vec<Perm>) -> FiniteGroup {
        FiniteGroup::with_degree(degree, gens).expect("generators of a common degree")
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup::from_trusted(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        FiniteGroup::from_trusted(n.max(1), gens)
    }

    pub fn alternating(n: usize) -> FiniteGroup {
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).unwrap()).collect();
        FiniteGroup::from_trusted(n.max(1), gens)
    }

    /// The regular cyclic group of order `n` on `n` points.
    pub fn cyclic(n: usize) -> FiniteGroup {
        if n <= 1 {
            return FiniteGroup::trivial(1);
        }
        FiniteGroup::from_trusted(n, vec![Perm::from_cycles(n, &[(0..n).collect()]).unwrap()])
    }

    /// The dihedral group of order `2n` acting on an `n`-gon (`n >= 3`).
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 3, "dihedral group needs at least 3 vertices");
        let rot = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl: Vec<Vec<usize>> = (1..n).filter(|&i| i < n - i).map(|i| vec![i, n - i]).collect();
        FiniteGroup::from_trusted(n, vec![rot, Perm::from_cycles(n, &refl).unwrap()])
    }

    /// The quaternion group in its regular representation on 8 points.
    pub fn quaternion() -> FiniteGroup {
        let i = Perm::parse(8, "(1 2 3 4)(5 6 7 8)").unwrap();
        let j = Perm::parse(8, "(1 5 3 7)(2 8 4 6)").unwrap();
        FiniteGroup::from_trusted(8, vec![i, j])
    }

    /// Elementary abelian group of order `p^rank`, as a product of regular cyclic groups.
    pub fn elementary_abelian(p: usize, rank: usize) -> FiniteGroup {
        (0..rank).fold(FiniteGroup::trivial(1), |acc, _| {
            if acc.order() == 1 {
                FiniteGroup::cyclic(p)
            } else {
                acc.direct_product(&FiniteGroup::cyclic(p))
            }
        })
    }

    /// `SL(2, p)` acting on the nonzero vectors of `F_p^2`.
    pub fn special_linear_2(p: usize) -> FiniteGroup {
        let points: Vec<(usize, usize)> =
            (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
        let index = |v: (usize, usize)| points.iter().position(|&w| w == v).unwrap();
        let act = |m: [[usize; 2]; 2]| {
            let images = points
                .iter()
                .map(|&(x, y)| index(((x * m[0][0] + y * m[1][0]) % p, (x * m[0][1] + y * m[1][1]) % p)) as u32)
                .collect();
            Perm::from_images(images).unwrap()
        };
        let gens = vec![act([[1, 1], [0, 1]]), act([[0, p - 1], [1, 0]])];
        FiniteGroup::from_trusted(points.len(), gens)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.degree() + other.degree();
        let mut gens: Vec<Perm> = self.generators().iter().map(|g| g.extend(n)).collect();
        gens.extend(other.generators().iter().map(|g| g.shift(self.degree(), n)));
        FiniteGroup::from_trusted(n, gens)
    }

    /// Imprimitive wreath product `self ≀ top`, with `top` permuting
    /// `top.degree()` copies of `self`'s point set.
    pub fn wreath_product(&self, top: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (self.degree(), top.degree());
        let n = m * k;
        let mut gens: Vec<Perm> = self.generators().iter().map(|g| g.extend(n)).collect();
        for t in top.generators() {
            let images = (0..n).map(|x| (t.apply(x / m) * m + x % m) as u32).collect();
            gens.push(Perm::from_images_unchecked(images));
        }
        FiniteGroup::from_trusted(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.0.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    pub(crate) fn require_subgroup_of(&self, other: &FiniteGroup, what: &str) -> Result<()> {
        if self.is_subgroup_of(other) {
            Ok(())
        } else {
            Err(Error::NotSubgroup(format!("{what} is not a subgroup of the ambient group")))
        }
    }

    /// The subgroup of the same degree generated by `gens` (which must lie in
    /// the same symmetric group).
    pub fn subgroup(&self, gens: Vec<Perm>) -> FiniteGroup {
        FiniteGroup::from_trusted(self.degree(), gens)
    }

    /// Subgroup generated by `elements`, keeping only generators that enlarge it.
    pub fn subgroup_from_elements<'a>(&self, elements: impl IntoIterator<Item = &'a Perm>) -> FiniteGroup {
        let mut chain = StabChain::new(self.degree(), &[]);
        let mut gens = Vec::new();
        for g in elements {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        self.subgroup(gens)
    }

    pub fn trivial_subgroup(&self) -> FiniteGroup {
        FiniteGroup::trivial(self.degree())
    }

    /// `<self, extra>`.
    pub fn closure(&self, extra: &[Perm]) -> FiniteGroup {
        let mut gens = self.generators().to_vec();
        let mut chain = self.chain().clone();
        for g in extra {
            if chain.add_generator(g) {
                gens.push(g.clone());
            }
        }
        self.subgroup(gens)
    }

    pub fn join(&self, other: &FiniteGroup) -> FiniteGroup {
        self.closure(other.generators())
    }

    pub fn join_all<'a>(degree: usize, groups: impl IntoIterator<Item = &'a FiniteGroup>) -> FiniteGroup {
        groups.into_iter().fold(FiniteGroup::trivial(degree), |acc, h| acc.join(h))
    }

    /// All elements, in enumeration order.
    pub fn elements(&self) -> Vec<Perm> {
        scan::filter(self.chain(), |_| true)
    }

    pub fn conjugate_by(&self, g: &Perm) -> FiniteGroup {
        self.subgroup(self.generators().iter().map(|x| x.conjugate(g)).collect())
    }

    /// True if `self` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators().iter().all(|g| self.generators().iter().all(|x| self.contains(&x.conjugate(g))))
    }

    pub(crate) fn require_normal_in(&self, ambient: &FiniteGroup, what: &str) -> Result<()> {
        if self.is_normal_in(ambient) {
            Ok(())
        } else {
            Err(Error::NotNormal(format!("{what} is not a normal subgroup")))
        }
    }

    /// Smallest normal subgroup of `self` containing `xs`.
    pub fn normal_closure(&self, xs: &[Perm]) -> Result<FiniteGroup> {
        if let Some(x) = xs.iter().find(|x| !self.contains(x)) {
            return Err(Error::NotSubgroup(format!("element {x} does not lie in the group")));
        }
        Ok(self.normal_closure_unchecked(xs))
    }

    fn normal_closure_unchecked(&self, xs: &[Perm]) -> FiniteGroup {
        let mut chain = StabChain::new(self.degree(), &[]);
        let mut gens: Vec<Perm> = Vec::new();
        let mut queue: Vec<Perm> = Vec::new();
        for x in xs {
            if chain.add_generator(x) {
                gens.push(x.clone());
                queue.push(x.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for g in self.generators() {
                let c = x.conjugate(g);
                if chain.add_generator(&c) {
                    gens.push(c.clone());
                    queue.push(c);
                }
            }
        }
        self.subgroup(gens)
    }

    /// `[A, B]` for subgroups of the same degree.
    pub fn commutator_subgroup(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let comms: Vec<Perm> = a
            .generators()
            .iter()
            .flat_map(|x| b.generators().iter().map(move |y| Perm::commutator(x, y)))
            .filter(|c| !c.is_identity())
            .collect();
        a.join(b).normal_closure_unchecked(&comms)
    }

    pub fn derived_subgroup(&self) -> FiniteGroup {
        self.0.derived.get_or_init(|| FiniteGroup::commutator_subgroup(self, self)).clone()
    }

    pub fn derived_series(&self) -> DerivedData {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        let terminal = series.last().unwrap().clone();
        DerivedData { series, terminal }
    }

    /// Last term of the derived series.
    pub fn perfect_residual(&self) -> FiniteGroup {
        self.derived_series().terminal
    }

    pub fn lower_central_series(&self) -> Vec<FiniteGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = FiniteGroup::commutator_subgroup(last, self);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn is_soluble(&self) -> bool {
        self.perfect_residual().is_trivial()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order(), p) == self.order()
    }

    /// True when every prime divisor of the order lies in `pi`.
    pub fn is_pi_group(&self, pi: &[u64]) -> bool {
        prime_factors(self.order()).iter().all(|(q, _)| pi.contains(q))
    }

    /// Nilpotent iff every Sylow subgroup is normal.
    pub fn is_nilpotent(&self) -> bool {
        if self.is_abelian() {
            return true;
        }
        prime_factors(self.order()).into_iter().all(|(p, _)| {
            crate::sylow::sylow_subgroup(self, p).map(|s| s.is_normal_in(self)).unwrap_or(false)
        })
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        if self.is_abelian() {
            // An abelian group's exponent is the lcm of its generators' orders.
            return self.generators().iter().fold(1, |acc, g| lcm(acc, g.order()));
        }
        scan::map_reduce(self.chain(), || 1u64, |acc, g| lcm(acc, g.order()), lcm)
    }

    pub fn structure_flags(&self) -> StructureFlags {
        StructureFlags {
            is_nilpotent: self.is_nilpotent(),
            is_soluble: self.is_soluble(),
            is_perfect: self.is_perfect(),
            exponent: self.exponent(),
        }
    }

    /// `C_self(h)` for a subgroup `h` of `self`.
    pub fn centralizer(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        h.require_subgroup_of(self, "H")?;
        Ok(self.centralizer_of_elements(h.generators()))
    }

    pub(crate) fn centralizer_of_elements(&self, xs: &[Perm]) -> FiniteGroup {
        if xs.iter().all(|x| self.generators().iter().all(|g| g.commutes_with(x))) {
            return self.clone();
        }
        let found = scan::filter(self.chain(), |g| xs.iter().all(|x| g.commutes_with(x)));
        self.subgroup_from_elements(&found)
    }

    pub fn center(&self) -> FiniteGroup {
        self.centralizer_of_elements(self.generators())
    }

    /// `N_self(h)`.
    pub fn normalizer(&self, h: &FiniteGroup) -> FiniteGroup {
        let found = scan::filter(self.chain(), |g| h.generators().iter().all(|x| h.contains(&x.conjugate(g))));
        self.subgroup_from_elements(&found)
    }

    pub fn intersection(&self, other: &FiniteGroup) -> FiniteGroup {
        if self.is_subgroup_of(other) {
            return self.clone();
        }
        if other.is_subgroup_of(self) {
            return other.clone();
        }
        let (small, large) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        let found = scan::filter(small.chain(), |g| large.contains(g));
        small.subgroup_from_elements(&found)
    }

    /// The subgroup generated by `{h^r : h in self}`.
    pub fn power_subgroup(&self, r: u64) -> Result<FiniteGroup> {
        if r == 0 {
            return Err(Error::ZeroExponent);
        }
        if r == 1 {
            return Ok(self.clone());
        }
        // {h^r} is closed under conjugation, so the generated subgroup is normal.
        let mut chain = StabChain::new(self.degree(), &[]);
        let mut gens = Vec::new();
        let _ = self.chain().visit::<()>(None, &mut |h| {
            let x = h.pow(r as i64);
            if !x.is_identity() && chain.add_generator(&x) {
                gens.push(x);
            }
            std::ops::ControlFlow::Continue(())
        });
        Ok(self.subgroup(gens))
    }

    /// Subnormality of `h` in `self` via the series `G ≥ H^G ≥ H^(H^G) ≥ …`.
    /// Returns the defect (number of strict steps) when subnormal.
    pub fn is_subnormal(&self, h: &FiniteGroup) -> Result<(bool, Option<usize>)> {
        h.require_subgroup_of(self, "H")?;
        let mut current = self.clone();
        let mut steps = 0;
        loop {
            if current.order() == h.order() {
                return Ok((true, Some(steps)));
            }
            let next = current.normal_closure_unchecked(h.generators());
            if next.order() == current.order() {
                return Ok((false, None));
            }
            current = next;
            steps += 1;
        }
    }

    /// Elements of `self` in the lexicographically sorted order.
    pub fn sorted_elements(&self) -> Vec<Perm> {
        let mut e = self.elements();
        e.sort();
        e
    }

    /// Right transversal of `h` in `self`.
    pub fn right_transversal(&self, h: &FiniteGroup) -> Vec<Perm> {
        crate::hom::CosetSpace::new(self, h).representatives().to_vec()
    }

    pub fn index_of(&self, h: &FiniteGroup) -> u128 {
        self.order() / h.order()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.order() == other.order() && self.is_subgroup_of(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {}, gens [", self.order(), self.degree())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// The derived series `G = G^(0) > G^(1) > …` down to its stable term.
#[derive(Debug, Clone)]
pub struct DerivedData {
    pub series: Vec<FiniteGroup>,
    pub terminal: FiniteGroup,
}
