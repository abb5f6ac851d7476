//! Fitting subgroup, components, layer and the generalised Fitting
//! subgroup, with the series and invariants that surround them.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{CapKind, Error, Result};
use crate::group::FiniteGroup;
use crate::hom::quotient_or_self;
use crate::lattice::{all_subgroups, core, frattini_of_p_group, normal_subgroups};
use crate::perm::{gcd, Perm};
use crate::primes::{is_prime, p_part, prime_factors};
use crate::sylow::sylow_subgroup;

/// `O_p(G)`, the intersection of the Sylow `p`-subgroups.
pub fn o_p(g: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    let s = sylow_subgroup(g, p)?;
    if s.is_normal_in(g) {
        return Ok(s);
    }
    core(g, &s)
}

/// `O_π(G)`: the largest normal `π`-subgroup.
pub fn o_pi(g: &FiniteGroup, pi: &[u64], caps: &Caps) -> Result<FiniteGroup> {
    if let Some(&p) = pi.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let present: Vec<u64> = prime_factors(g.order()).into_iter().map(|(p, _)| p).filter(|p| pi.contains(p)).collect();
    match present.as_slice() {
        [] => Ok(g.trivial_subgroup()),
        [p] => o_p(g, *p),
        _ if g.is_pi_group(&present) => Ok(g.clone()),
        _ => o_pi_by_lattice(g, &present, caps),
    }
}

/// `O_π(G)` as the join of the normal `π`-subgroups in the normal lattice.
pub fn o_pi_by_lattice(g: &FiniteGroup, pi: &[u64], caps: &Caps) -> Result<FiniteGroup> {
    let lattice = normal_subgroups(g, caps)?;
    Ok(FiniteGroup::join_all(g.degree(), lattice.members.iter().filter(|n| n.is_pi_group(pi))))
}

/// `F(G)`, the join of the `O_p(G)`.
pub fn fitting_subgroup(g: &FiniteGroup) -> Result<FiniteGroup> {
    if g.is_abelian() {
        return Ok(g.clone());
    }
    let mut f = g.trivial_subgroup();
    for (p, _) in prime_factors(g.order()) {
        f = f.join(&o_p(g, p)?);
    }
    Ok(f)
}

pub fn is_simple(g: &FiniteGroup, caps: &Caps) -> Result<bool> {
    if g.is_trivial() {
        return Ok(false);
    }
    if g.is_abelian() {
        return Ok(is_prime(g.order() as u64));
    }
    if !g.is_perfect() {
        return Ok(false);
    }
    Ok(normal_subgroups(g, caps)?.members.len() == 2)
}

/// Perfect, with `G/Z(G)` simple.
pub fn is_quasisimple(g: &FiniteGroup, caps: &Caps) -> Result<bool> {
    if g.is_trivial() || !g.is_perfect() {
        return Ok(false);
    }
    let (q, _) = quotient_or_self(g, &g.center())?;
    is_simple(&q, caps)
}

fn sorted(mut groups: Vec<FiniteGroup>) -> Vec<FiniteGroup> {
    groups.sort_by_cached_key(|h| (h.order(), h.sorted_elements()));
    groups.dedup();
    groups
}

/// The subnormal quasisimple subgroups of `g`.
///
/// Every component centralizes `F = F(G)` and maps onto a simple direct
/// factor of a nonabelian minimal normal subgroup of `C_G(F)F/F`; each
/// such factor is pulled back and reduced to its perfect residual. Every
/// result is re-verified to be quasisimple and subnormal.
pub fn components(g: &FiniteGroup, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    if g.is_soluble() {
        return Ok(Vec::new());
    }
    let f = fitting_subgroup(g)?;
    let c = g.centralizer(&f)?;
    let cf = c.join(&f);
    let (h, pi) = quotient_or_self(&cf, &f)?;
    let lattice = normal_subgroups(&h, caps)?;
    let mut found = Vec::new();
    for m in lattice.minimal_normal_subgroups() {
        if m.is_abelian() {
            continue;
        }
        let factors = normal_subgroups(&m, caps)?.minimal_normal_subgroups();
        for t in factors {
            let q = pi.preimage(&t)?.perfect_residual();
            if !is_quasisimple(&q, caps)? || !g.is_subnormal(&q)?.0 {
                return Err(Error::Internal(format!("candidate component of order {} failed verification", q.order())));
            }
            found.push(q);
        }
    }
    Ok(sorted(found))
}

/// `E(G)`, the join of the components.
pub fn layer(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    Ok(FiniteGroup::join_all(g.degree(), &components(g, caps)?))
}

/// `F*(G) = F(G)E(G)`.
pub fn fstar(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    let f = fitting_subgroup(g)?;
    if g.is_soluble() {
        return Ok(f);
    }
    Ok(f.join(&layer(g, caps)?))
}

#[derive(Debug, Clone)]
pub struct FittingReport {
    pub group: FiniteGroup,
    pub fitting: FiniteGroup,
    pub components: Vec<FiniteGroup>,
    pub layer: FiniteGroup,
    pub fstar: FiniteGroup,
    pub center_of_fitting: FiniteGroup,
    pub centralizer_of_fstar: FiniteGroup,
}

impl FittingReport {
    /// `C_G(F*(G)) = Z(F(G))`, which holds for every finite group.
    pub fn centralizer_equals_center(&self) -> bool {
        self.centralizer_of_fstar == self.center_of_fitting
    }
}

pub fn generalized_fitting(g: &FiniteGroup, caps: &Caps) -> Result<FittingReport> {
    let fitting = fitting_subgroup(g)?;
    let components = components(g, caps)?;
    let layer = FiniteGroup::join_all(g.degree(), &components);
    let fstar = fitting.join(&layer);
    let center_of_fitting = fitting.center();
    let centralizer_of_fstar = g.centralizer(&fstar)?;
    Ok(FittingReport { group: g.clone(), fitting, components, layer, fstar, center_of_fitting, centralizer_of_fstar })
}

/// Whether `G = F*(G)`. Decided twice: directly, and by "G/F(G) perfect and
/// G/E(G) nilpotent"; disagreement is reported as an internal error.
pub fn is_fstar_group(g: &FiniteGroup, caps: &Caps) -> Result<bool> {
    if g.is_nilpotent() {
        return Ok(true);
    }
    let f = fitting_subgroup(g)?;
    let e = layer(g, caps)?;
    let direct = f.join(&e).order() == g.order();
    let mod_f_perfect = g.derived_subgroup().join(&f).order() == g.order();
    let mod_e_nilpotent = g.lower_central_series().last().unwrap().is_subgroup_of(&e);
    let by_quotients = mod_f_perfect && mod_e_nilpotent;
    if direct != by_quotients {
        return Err(Error::Internal(format!(
            "F*-group criteria disagree on a group of order {}: direct {direct}, quotient test {by_quotients}",
            g.order()
        )));
    }
    Ok(direct)
}

/// Rank of `S/Φ(S)` for a Sylow `p`-subgroup `S`.
pub fn d_p(g: &FiniteGroup, p: u64) -> Result<u32> {
    let s = sylow_subgroup(g, p)?;
    let phi = frattini_of_p_group(&s, p)?;
    let mut index = s.order() / phi.order();
    let mut rank = 0;
    while index > 1 {
        index /= p as u128;
        rank += 1;
    }
    Ok(rank)
}

/// The lower `r`-series `G = Φ^0 ≥ Φ^1 ≥ …`, each step the smallest
/// subgroup with a central quotient of exponent dividing `r`.
#[derive(Debug, Clone)]
pub struct LowerRSeries {
    pub group: FiniteGroup,
    pub r: u64,
    pub terms: Vec<FiniteGroup>,
    pub stable: FiniteGroup,
}

impl LowerRSeries {
    /// `Φ^k`, which equals the stable term beyond the listed ones.
    pub fn term(&self, k: usize) -> &FiniteGroup {
        self.terms.get(k).unwrap_or(&self.stable)
    }
}

fn lower_r_series_with(
    g: &FiniteGroup,
    r: u64,
    step: impl Fn(&FiniteGroup) -> Result<FiniteGroup>,
) -> Result<LowerRSeries> {
    if r == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = step(last)?;
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    let stable = terms.last().unwrap().clone();
    Ok(LowerRSeries { group: g.clone(), r, terms, stable })
}

/// `Φ^{k+1} = [Φ^k, G] ⟨x^r : x a generator of Φ^k⟩`; modulo `[Φ^k, G]`
/// the group `Φ^k` is central, hence abelian, so generator powers suffice.
pub fn lower_r_series(g: &FiniteGroup, r: u64) -> Result<LowerRSeries> {
    lower_r_series_with(g, r, |phi| {
        let powers: Vec<Perm> = phi.generators().iter().map(|x| x.pow(r as i64)).collect();
        Ok(FiniteGroup::commutator_subgroup(phi, g).closure(&powers))
    })
}

/// The same series with `Φ^{k+1} = [Φ^k, G] (Φ^k)^r` taken literally.
pub fn lower_r_series_by_definition(g: &FiniteGroup, r: u64) -> Result<LowerRSeries> {
    lower_r_series_with(g, r, |phi| Ok(FiniteGroup::commutator_subgroup(phi, g).join(&phi.power_subgroup(r)?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

/// For `H ≤ G` of index prime to `r` with `Φ^1_r(H) = Φ^1_r(G) ∩ H`, checks
/// `Φ^k_r(H) = Φ^k_r(G) ∩ H` for every `k` and for the stable terms.
pub fn restricted_series_check(g: &FiniteGroup, h: &FiniteGroup, r: u64) -> Result<HypothesisCheck> {
    h.require_subgroup_of(g, "H")?;
    let sg = lower_r_series(g, r)?;
    let sh = lower_r_series(h, r)?;
    let index = (g.order() / h.order()) as u64;
    let hypothesis_holds = gcd(index, r) == 1 && *sh.term(1) == sg.term(1).intersection(h);
    let depth = sg.terms.len().max(sh.terms.len());
    let conclusion_holds =
        (0..=depth).all(|k| *sh.term(k) == sg.term(k).intersection(h)) && sh.stable == sg.stable.intersection(h);
    Ok(HypothesisCheck { hypothesis_holds, conclusion_holds })
}

/// For `N ⊴ G` and a Sylow `p`-subgroup `S` of `G` with `S ∩ N ≤ Φ(S)`,
/// checks that `Φ^∞_p(N)` is a normal `p'`-Hall subgroup of `N`.
pub fn p_residual_hall_check(g: &FiniteGroup, n: &FiniteGroup, p: u64) -> Result<HypothesisCheck> {
    n.require_normal_in(g, "N")?;
    let s = sylow_subgroup(g, p)?;
    let hypothesis_holds = s.intersection(n).is_subgroup_of(&frattini_of_p_group(&s, p)?);
    let stable = lower_r_series(n, p)?.stable;
    let p_prime_part = n.order() / p_part(n.order(), p);
    let conclusion_holds = stable.is_normal_in(n) && stable.order() == p_prime_part;
    Ok(HypothesisCheck { hypothesis_holds, conclusion_holds })
}

#[derive(Debug, Clone)]
pub struct CentralizerCheck {
    pub lhs: FiniteGroup,
    pub rhs: FiniteGroup,
    pub equal: bool,
}

/// Compares `C_G(F*(G))` with `Z(F(G))`.
pub fn fstar_centralizer_check(g: &FiniteGroup, caps: &Caps) -> Result<CentralizerCheck> {
    let report = generalized_fitting(g, caps)?;
    let equal = report.centralizer_equals_center();
    Ok(CentralizerCheck { lhs: report.centralizer_of_fstar, rhs: report.center_of_fitting, equal })
}

/// `F`, `E` and `F*` read directly off the definitions by enumerating all
/// subgroups; independent of the structural algorithms above.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub fitting: FiniteGroup,
    pub layer: FiniteGroup,
    pub fstar: FiniteGroup,
}

pub fn brute_force_oracle(g: &FiniteGroup, caps: &Caps) -> Result<OracleResult> {
    caps.check(CapKind::Oracle, g.order())?;
    let inv = all_subgroups(g, &Caps { subgroup: caps.subgroup.max(g.order()), ..*caps })?;
    let mut fitting = g.trivial_subgroup();
    let mut layer = g.trivial_subgroup();
    for h in &inv.subgroups {
        if h.is_trivial() {
            continue;
        }
        let nilpotent = h.is_nilpotent();
        let quasisimple = !nilpotent && is_quasisimple(h, caps)?;
        if !(nilpotent || quasisimple) || !g.is_subnormal(h)?.0 {
            continue;
        }
        if nilpotent {
            fitting = fitting.join(h);
        } else {
            layer = layer.join(h);
        }
    }
    let fstar = fitting.join(&layer);
    Ok(OracleResult { fitting, layer, fstar })
}

/// The `F*` oracle alone.
pub fn brute_force_fstar_oracle(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    Ok(brute_force_oracle(g, caps)?.fstar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn parse(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    fn v4_in_s4() -> FiniteGroup {
        FiniteGroup::symmetric(4).subgroup(vec![parse(4, "(1 2)(3 4)"), parse(4, "(1 3)(2 4)")])
    }

    #[test]
    fn pi_cores() {
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(o_pi(&s4, &[2], &caps()).unwrap(), v4_in_s4());
        assert_eq!(o_pi_by_lattice(&s4, &[2], &caps()).unwrap(), v4_in_s4());
        let q8 = FiniteGroup::quaternion();
        assert_eq!(o_pi(&q8, &[2], &caps()).unwrap(), q8);
        assert!(o_pi(&s4, &[], &caps()).unwrap().is_trivial());
        let g = FiniteGroup::alternating(5).direct_product(&FiniteGroup::cyclic(6));
        assert_eq!(o_pi(&g, &[2, 3], &caps()).unwrap().order(), 6);
    }

    #[test]
    fn fitting_subgroups() {
        assert_eq!(fitting_subgroup(&FiniteGroup::symmetric(4)).unwrap(), v4_in_s4());
        let d8 = FiniteGroup::dihedral(4);
        assert_eq!(fitting_subgroup(&d8).unwrap(), d8);
        assert!(fitting_subgroup(&FiniteGroup::alternating(5)).unwrap().is_trivial());
    }

    #[test]
    fn quasisimplicity() {
        assert!(is_quasisimple(&FiniteGroup::alternating(5), &caps()).unwrap());
        let sl25 = FiniteGroup::special_linear_2(5);
        assert_eq!(sl25.center().order(), 2);
        assert!(is_quasisimple(&sl25, &caps()).unwrap());
        assert!(!is_quasisimple(&FiniteGroup::cyclic(6), &caps()).unwrap());
        assert!(!is_quasisimple(&FiniteGroup::special_linear_2(3), &caps()).unwrap());
    }

    #[test]
    fn component_examples() {
        let s5 = components(&FiniteGroup::symmetric(5), &caps()).unwrap();
        assert_eq!(s5, vec![FiniteGroup::alternating(5)]);
        assert!(components(&FiniteGroup::symmetric(4), &caps()).unwrap().is_empty());
        let a5 = FiniteGroup::alternating(5);
        let big = Caps { normal_lattice: 4000, ..caps() };
        assert_eq!(components(&a5.direct_product(&a5), &big).unwrap().len(), 2);
        assert!(components(&a5.direct_product(&a5), &caps()).is_err());
        let g = a5.direct_product(&FiniteGroup::cyclic(6));
        assert_eq!(layer(&g, &caps()).unwrap().order(), 60);
        let sl25 = FiniteGroup::special_linear_2(5);
        assert_eq!(components(&sl25, &caps()).unwrap(), vec![sl25.clone()]);
    }

    #[test]
    fn generalized_fitting_examples() {
        let s4 = generalized_fitting(&FiniteGroup::symmetric(4), &caps()).unwrap();
        assert_eq!(s4.fstar, v4_in_s4());
        assert!(s4.centralizer_equals_center());
        let a5 = FiniteGroup::alternating(5);
        let r = generalized_fitting(&a5, &caps()).unwrap();
        assert!(r.fitting.is_trivial());
        assert_eq!((r.layer.clone(), r.fstar.clone()), (a5.clone(), a5));
        let t = generalized_fitting(&FiniteGroup::trivial(1), &caps()).unwrap();
        assert!(t.fstar.is_trivial() && t.layer.is_trivial() && t.centralizer_of_fstar.is_trivial());
    }

    #[test]
    fn fstar_groups() {
        assert!(is_fstar_group(&v4_in_s4(), &caps()).unwrap());
        assert!(is_fstar_group(&FiniteGroup::alternating(5), &caps()).unwrap());
        assert!(!is_fstar_group(&FiniteGroup::symmetric(4), &caps()).unwrap());
        assert!(!is_fstar_group(&FiniteGroup::symmetric(5), &caps()).unwrap());
        let g = FiniteGroup::alternating(5).direct_product(&FiniteGroup::cyclic(6));
        assert!(is_fstar_group(&g, &caps()).unwrap());
    }

    #[test]
    fn d_p_examples() {
        assert_eq!(d_p(&FiniteGroup::symmetric(4), 2).unwrap(), 2);
        assert_eq!(d_p(&FiniteGroup::symmetric(4), 5).unwrap(), 0);
        assert_eq!(d_p(&FiniteGroup::elementary_abelian(3, 3), 3).unwrap(), 3);
        assert_eq!(d_p(&FiniteGroup::quaternion(), 2).unwrap(), 2);
    }

    #[test]
    fn lower_r_series_examples() {
        let d8 = FiniteGroup::dihedral(4);
        let s = lower_r_series(&d8, 2).unwrap();
        assert_eq!(*s.term(1), d8.center());
        assert_eq!(*s.term(1), frattini_of_p_group(&d8, 2).unwrap());
        assert!(s.term(2).is_trivial() && s.stable.is_trivial());
        let s3 = FiniteGroup::symmetric(3);
        let s = lower_r_series(&s3, 2).unwrap();
        assert_eq!(*s.term(1), FiniteGroup::alternating(3));
        assert_eq!(s.stable, FiniteGroup::alternating(3));
        assert!(lower_r_series(&FiniteGroup::elementary_abelian(2, 3), 4).unwrap().term(1).is_trivial());
    }

    #[test]
    fn lower_r_series_routes_agree() {
        let groups = [FiniteGroup::symmetric(4), FiniteGroup::special_linear_2(3), FiniteGroup::dihedral(6)];
        for g in &groups {
            for r in [2, 3, 4, 6] {
                let a = lower_r_series(g, r).unwrap();
                let b = lower_r_series_by_definition(g, r).unwrap();
                assert_eq!(a.terms, b.terms);
            }
        }
    }

    #[test]
    fn restricted_series_examples() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.subgroup(vec![parse(3, "(1 2)")]);
        assert_eq!(
            restricted_series_check(&s3, &t, 2).unwrap(),
            HypothesisCheck { hypothesis_holds: true, conclusion_holds: true }
        );
        assert_eq!(
            restricted_series_check(&s3, &s3, 5).unwrap(),
            HypothesisCheck { hypothesis_holds: true, conclusion_holds: true }
        );
        assert!(!restricted_series_check(&s3, &FiniteGroup::alternating(3), 2).unwrap().hypothesis_holds);
    }

    #[test]
    fn p_residual_examples() {
        let s3 = FiniteGroup::symmetric(3);
        let c = p_residual_hall_check(&s3, &FiniteGroup::alternating(3), 2).unwrap();
        assert!(c.hypothesis_holds && c.conclusion_holds);
        let c = p_residual_hall_check(&s3, &s3.trivial_subgroup(), 2).unwrap();
        assert!(c.hypothesis_holds && c.conclusion_holds);
        let s4 = FiniteGroup::symmetric(4);
        assert!(!p_residual_hall_check(&s4, &FiniteGroup::alternating(4), 2).unwrap().hypothesis_holds);
    }

    #[test]
    fn centralizer_check_examples() {
        for g in [FiniteGroup::symmetric(4), FiniteGroup::alternating(5), FiniteGroup::cyclic(6)] {
            let c = fstar_centralizer_check(&g, &caps()).unwrap();
            assert!(c.equal);
        }
        let c = fstar_centralizer_check(&FiniteGroup::cyclic(6), &caps()).unwrap();
        assert_eq!(c.lhs, FiniteGroup::cyclic(6));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_fstar_oracle(&FiniteGroup::symmetric(4), &caps()).unwrap(), v4_in_s4());
        let a5 = FiniteGroup::alternating(5);
        assert_eq!(brute_force_fstar_oracle(&a5, &caps()).unwrap(), a5);
        assert!(brute_force_fstar_oracle(&FiniteGroup::trivial(1), &caps()).unwrap().is_trivial());
        assert!(brute_force_fstar_oracle(&FiniteGroup::symmetric(6), &caps()).is_err());
    }
}
