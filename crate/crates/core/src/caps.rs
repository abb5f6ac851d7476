use crate::error::{CapKind, Error, Result};

/// Size limits for the exhaustive parts of the library.
///
/// Operations that would need to go beyond a limit fail with
/// [`Error::CapExceeded`] instead of approximating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose full subgroup lattice is enumerated.
    pub subgroup: u128,
    /// Largest group whose normal-subgroup lattice is enumerated.
    pub normal_lattice: u128,
    /// Largest group handed to the brute-force F* oracle.
    pub oracle: u128,
    /// Largest level order allowed when building towers.
    pub tower_order: u128,
    /// Largest number of candidate generator tuples tried when searching for
    /// a complement of an abelian minimal normal subgroup.
    pub complement_search: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subgroup: 500,
            normal_lattice: 2000,
            oracle: 300,
            tower_order: 10_000_000,
            complement_search: 200_000,
        }
    }
}

impl Caps {
    /// Defaults overridden by any `FITKIT_CAP_*` variables that are set.
    pub fn from_env() -> Result<Caps> {
        let mut caps = Caps::default();
        for (kind, slot) in [
            (CapKind::Subgroup, &mut caps.subgroup),
            (CapKind::NormalLattice, &mut caps.normal_lattice),
            (CapKind::Oracle, &mut caps.oracle),
            (CapKind::TowerOrder, &mut caps.tower_order),
            (CapKind::Complement, &mut caps.complement_search),
        ] {
            if let Ok(v) = std::env::var(kind.env_var()) {
                *slot = v.trim().parse().map_err(|_| {
                    Error::InvalidInput(format!("{}={v:?} is not a non-negative integer", kind.env_var()))
                })?;
            }
        }
        Ok(caps)
    }

    pub fn unlimited() -> Caps {
        Caps {
            subgroup: u128::MAX,
            normal_lattice: u128::MAX,
            oracle: u128::MAX,
            tower_order: u128::MAX,
            complement_search: u128::MAX,
        }
    }

    pub(crate) fn check(&self, kind: CapKind, value: u128) -> Result<()> {
        let limit = match kind {
            CapKind::Subgroup => self.subgroup,
            CapKind::NormalLattice => self.normal_lattice,
            CapKind::Oracle => self.oracle,
            CapKind::TowerOrder => self.tower_order,
            CapKind::Complement => self.complement_search,
            CapKind::Enumeration => u128::MAX,
        };
        if value > limit {
            Err(Error::cap(kind, limit, value))
        } else {
            Ok(())
        }
    }
}
