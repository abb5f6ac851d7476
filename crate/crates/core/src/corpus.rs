//! The bundled corpus of small permutation groups, plus seeded random
//! subgroups of small symmetric groups.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::Result;
use crate::fitting::{is_quasisimple, is_simple};
use crate::group::FiniteGroup;
use crate::io::parse_group;
use crate::perm::Perm;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub tags: BTreeSet<String>,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".grp")))),*]
    };
}

const FILES: &[(&str, &str)] = bundled!(
    "trivial", "c2", "c3", "c4", "c5", "c6", "c8", "c12", "c16", "v4", "c2_3", "c2_4", "c2_6", "c3_2", "c5_2",
    "c4xc2", "d8", "d10", "d12", "d16", "d20", "q8", "s3", "s4", "s5", "s6", "a4", "a5", "a6", "sl2_3", "sl2_5",
    "a5xc6", "s4xs3", "c2wrc2",
);

/// Structural tags: `trivial`, `abelian`, `p-group`, `nilpotent`, `soluble`,
/// `perfect`, `simple`, `quasisimple`.
pub fn tags_of(g: &FiniteGroup) -> Result<BTreeSet<String>> {
    let caps = Caps::default();
    let flags = g.structure_flags();
    let mut tags = BTreeSet::new();
    let mut tag = |on: bool, name: &str| {
        if on {
            tags.insert(name.to_string());
        }
    };
    tag(g.is_trivial(), "trivial");
    tag(g.is_abelian(), "abelian");
    tag(crate::primes::prime_factors(g.order()).len() == 1, "p-group");
    tag(flags.is_nilpotent, "nilpotent");
    tag(flags.is_soluble, "soluble");
    tag(flags.is_perfect, "perfect");
    tag(is_simple(g, &caps)?, "simple");
    tag(is_quasisimple(g, &caps)?, "quasisimple");
    Ok(tags)
}

fn entry(name: &str, group: FiniteGroup) -> CorpusEntry {
    let tags = tags_of(&group).expect("corpus groups are within the default caps");
    CorpusEntry { name: name.to_string(), group, tags }
}

/// The bundled groups, in a fixed order.
pub fn bundled() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        FILES
            .iter()
            .map(|(name, text)| entry(name, parse_group(text).unwrap_or_else(|e| panic!("corpus file {name}: {e}"))))
            .collect()
    })
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    bundled().iter().find(|e| e.name == name)
}

/// `count` subgroups of `Sym(d)`, `2 ≤ d ≤ max_degree`, each generated by
/// a seeded random pair. Pairs generating more than `max_order` elements
/// are redrawn, so the sample leans towards small groups.
pub fn random_subgroups(count: usize, max_degree: usize, seed: u64, max_order: u128) -> Vec<CorpusEntry> {
    assert!(max_degree >= 2, "random subgroups need degree at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(2..=max_degree);
        let pair: Vec<Perm> = (0..2)
            .map(|_| {
                let mut images: Vec<u32> = (0..d as u32).collect();
                images.shuffle(&mut rng);
                Perm::from_images(images).expect("a shuffle is a permutation")
            })
            .collect();
        let text = pair.iter().map(Perm::to_string).collect::<Vec<_>>().join(", ");
        let g = FiniteGroup::with_degree(d, pair).expect("generators share the degree");
        if g.order() <= max_order {
            out.push(entry(&format!("random{}[deg {d}: {text}]", out.len()), g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_load() {
        let c = bundled();
        assert!(c.len() >= 30);
        let names: BTreeSet<&str> = c.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), c.len());
        let order = |n: &str| get(n).unwrap().group.order();
        assert_eq!((order("sl2_3"), order("sl2_5"), order("a5xc6"), order("s4xs3"), order("c2_6")), (24, 120, 360, 144, 64));
        assert_eq!(get("sl2_5").unwrap().group.degree(), 24);
        assert!(get("a5").unwrap().tags.contains("simple"));
        assert!(get("sl2_5").unwrap().tags.contains("quasisimple"));
        assert!(!get("sl2_5").unwrap().tags.contains("simple"));
        assert!(get("q8").unwrap().tags.contains("p-group"));
        assert!(get("trivial").unwrap().tags.contains("trivial"));
    }

    #[test]
    fn random_sample_is_reproducible() {
        let a = random_subgroups(10, 8, 7, 2000);
        let b = random_subgroups(10, 8, 7, 2000);
        assert_eq!(a.len(), 10);
        assert!(a.iter().zip(&b).all(|(x, y)| x.name == y.name && x.group == y.group));
        assert!(a.iter().all(|e| e.group.order() <= 2000 && e.group.degree() <= 8));
    }
}
