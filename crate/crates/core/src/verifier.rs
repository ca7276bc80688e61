//! Definitional USO verification and brute-force reference answers.

use rayon::prelude::*;

use crate::cube::{check_dim, Subcube, SubsetMask};
use crate::error::{Result, UsoError};
use crate::orientation::{Outmap, OutmapOracle};

/// Cap for the `O(4^n)` subcube scan.
pub const MAX_VERIFY_DIM: u32 = 12;

/// Cap for exhaustive enumeration of orientations.
pub const MAX_ENUM_DIM: u32 = 3;

/// Vertices `w` of `c` with `s(w) ∩ carr c = ∅`.
pub fn subcube_sinks(m: &Outmap, c: &Subcube) -> Vec<SubsetMask> {
    let carrier = c.carrier();
    c.vertices()
        .filter(|&w| m.eval(w).intersection(carrier).is_empty())
        .collect()
}

fn has_unique_sink(m: &Outmap, lo: SubsetMask, carrier: SubsetMask) -> bool {
    let mut sinks = 0;
    for sub in carrier.subsets() {
        if m.eval(lo.union(sub)).intersection(carrier).is_empty() {
            sinks += 1;
            if sinks > 1 {
                return false;
            }
        }
    }
    sinks == 1
}

/// True iff `m` is an orientation and each of the `3^n` subcubes has exactly
/// one sink. The scan is split over the lower corner of each subcube.
pub fn is_uso(m: &Outmap) -> Result<bool> {
    check_dim(m.dim(), MAX_VERIFY_DIM, "USO verification")?;
    if !m.is_orientation() {
        return Ok(false);
    }
    let full = SubsetMask::full(m.dim());
    let corners: Vec<SubsetMask> = full.subsets().collect();
    Ok(corners.par_iter().all(|&lo| {
        full.difference(lo)
            .subsets()
            .all(|carrier| has_unique_sink(m, lo, carrier))
    }))
}

/// Pairwise criterion: `(u ⊕ v) ∩ (s(u) ⊕ s(v)) ≠ ∅` for all `u ≠ v`.
///
/// An independent `O(4^n)` check that agrees with [`is_uso`] on orientations.
pub fn is_uso_pairwise(m: &Outmap) -> Result<bool> {
    check_dim(m.dim(), MAX_VERIFY_DIM, "USO verification")?;
    if !m.is_orientation() {
        return Ok(false);
    }
    let n = m.len() as u32;
    Ok((0..n).into_par_iter().all(|u| {
        let (u, su) = (SubsetMask::new(u), m.eval(SubsetMask::new(u)));
        (u.bits() + 1..n).all(|v| {
            let v = SubsetMask::new(v);
            !u.sym_diff(v).intersection(su.sym_diff(m.eval(v))).is_empty()
        })
    }))
}

/// The unique vertex with empty outmap, found by querying every vertex.
pub fn global_sink<O: OutmapOracle + ?Sized>(oracle: &O) -> Result<SubsetMask> {
    let mut found = None;
    for v in SubsetMask::full(oracle.dim()).subsets() {
        if oracle.eval(v).is_empty() {
            if let Some(first) = found {
                return Err(UsoError::NotUso(format!("sinks at {first} and {v}")));
            }
            found = Some(v);
        }
    }
    found.ok_or_else(|| UsoError::NotUso("no global sink".into()))
}

fn require_uso(m: &Outmap) -> Result<()> {
    if is_uso(m)? {
        Ok(())
    } else {
        Err(UsoError::NotUso("some subcube does not have a unique sink".into()))
    }
}

/// Brute-force answer to "is the global sink inside `c`?". Verifies the
/// USO promise first.
pub fn decide(m: &Outmap, c: &Subcube) -> Result<bool> {
    require_uso(m)?;
    Ok(c.contains(global_sink(m)?))
}

/// True iff the `2^n` table entries are pairwise distinct.
pub fn is_bijection(m: &Outmap) -> bool {
    let mut seen = vec![false; m.len()];
    m.table().iter().all(|s| !std::mem::replace(&mut seen[s.index()], true))
}

/// Every USO of the `n`-cube, `n ≤ 3`, found by trying all `2^(n·2^(n-1))`
/// edge directions against the definitional verifier.
pub fn enumerate_usos(n: u32) -> Result<impl Iterator<Item = Outmap>> {
    check_dim(n, MAX_ENUM_DIM, "USO enumeration")?;
    let edges: Vec<(SubsetMask, u32)> = (1..=n)
        .flat_map(|lambda| {
            SubsetMask::full(n)
                .subsets()
                .filter(move |v| !v.has(lambda))
                .map(move |v| (v, lambda))
        })
        .collect();
    let count = 1u64 << edges.len();
    Ok((0..count).filter_map(move |assignment| {
        let mut table = vec![0u32; 1 << n];
        for (i, &(v, lambda)) in edges.iter().enumerate() {
            let e = SubsetMask::singleton(lambda);
            // bit set: edge points from v up to v ∪ {λ}
            let tail = if assignment >> i & 1 == 1 { v } else { v.union(e) };
            table[tail.index()] |= e.bits();
        }
        let m = Outmap::from_table(n, table).expect("entries fit in [n]");
        is_uso(&m).expect("n within cap").then_some(m)
    }))
}

/// Brute-force decision oracle that validates the USO promise once and then
/// answers membership queries from a single scan.
#[derive(Debug, Clone)]
pub struct BruteForceDecision {
    sink: SubsetMask,
}

impl BruteForceDecision {
    pub fn new(m: &Outmap) -> Result<Self> {
        require_uso(m)?;
        Ok(BruteForceDecision { sink: global_sink(m)? })
    }

    pub fn decide(&self, c: &Subcube) -> bool {
        c.contains(self.sink)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{enumerate_subcubes, lambda_facets};
    use crate::orientation::tests::example_uso;
    use crate::orientation::Direction;

    fn set(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    fn all_orientations(n: u32) -> Vec<Outmap> {
        // Independent route: every table of subsets that passes the edge check.
        let size = 1usize << n;
        let vals = 1u64 << n;
        (0..vals.pow(size as u32))
            .filter_map(|mut code| {
                let table: Vec<u32> = (0..size)
                    .map(|_| {
                        let e = (code % vals) as u32;
                        code /= vals;
                        e
                    })
                    .collect();
                let m = Outmap::from_table(n, table).unwrap();
                m.is_orientation().then_some(m)
            })
            .collect()
    }

    #[test]
    fn example_subcube_sinks() {
        let m = example_uso();
        let face = Subcube::new(SubsetMask::EMPTY, set(&[1, 2])).unwrap();
        assert_eq!(subcube_sinks(&m, &face), vec![set(&[1, 2])]);
        assert_eq!(subcube_sinks(&m, &Subcube::full(3)), vec![set(&[1, 3])]);
        for v in m.vertices() {
            assert_eq!(subcube_sinks(&m, &Subcube::vertex(v)), vec![v]);
        }
    }

    #[test]
    fn is_uso_examples() {
        assert!(is_uso(&example_uso()).unwrap());
        for n in 1..=3 {
            for a in SubsetMask::full(n).subsets() {
                assert!(is_uso(&Outmap::uniform(n, a).unwrap()).unwrap());
            }
        }
        // 0 -> {1} -> {1,2} -> {2} -> 0 as a directed 4-cycle.
        let cyclic = Outmap::from_table(2, vec![1, 2, 2, 1]).unwrap();
        assert!(cyclic.is_orientation());
        assert!(!is_uso(&cyclic).unwrap());
        assert!(!is_uso(&Outmap::from_table(1, vec![0, 0]).unwrap()).unwrap());
        assert!(is_uso(&Outmap::psi(13).unwrap()).is_err());
    }

    #[test]
    fn global_sink_examples() {
        assert_eq!(global_sink(&example_uso()).unwrap(), set(&[1, 3]));
        let a = set(&[1, 4]);
        assert_eq!(global_sink(&Outmap::uniform(4, a).unwrap()).unwrap(), a);
        assert_eq!(global_sink(&Outmap::psi(2).unwrap()).unwrap(), set(&[2]));
        let two_sinks = Outmap::from_table(1, vec![0, 0]).unwrap();
        assert!(matches!(global_sink(&two_sinks), Err(UsoError::NotUso(_))));
        let no_sink = Outmap::from_table(1, vec![1, 1]).unwrap();
        assert!(matches!(global_sink(&no_sink), Err(UsoError::NotUso(_))));
    }

    #[test]
    fn decide_examples() {
        let m = example_uso();
        assert!(decide(&m, &Subcube::new(set(&[1]), set(&[1, 3])).unwrap()).unwrap());
        assert!(!decide(&m, &Subcube::new(SubsetMask::EMPTY, set(&[1, 2])).unwrap()).unwrap());
        assert!(decide(&m, &Subcube::full(3)).unwrap());
        let cyclic = Outmap::from_table(2, vec![1, 2, 2, 1]).unwrap();
        assert!(matches!(decide(&cyclic, &Subcube::full(2)), Err(UsoError::NotUso(_))));
    }

    #[test]
    fn bijection_examples() {
        assert!(is_bijection(&example_uso()));
        assert!(!is_bijection(&Outmap::from_table(1, vec![0, 0]).unwrap()));
        for seed in 0..20 {
            assert!(is_bijection(&Outmap::random_uso(7, seed).unwrap()));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_usos(1).unwrap().count(), 2);
        assert_eq!(enumerate_usos(2).unwrap().count(), 12);
        assert!(enumerate_usos(4).is_err());
    }

    #[test]
    fn enumeration_matches_independent_route() {
        // Orientations built from raw tables rather than edge assignments.
        for n in 1..=2 {
            let mut via_tables: Vec<_> = all_orientations(n)
                .into_iter()
                .filter(|m| is_uso(m).unwrap())
                .map(|m| m.to_bits())
                .collect();
            let mut via_edges: Vec<_> = enumerate_usos(n).unwrap().map(|m| m.to_bits()).collect();
            via_tables.sort();
            via_edges.sort();
            assert_eq!(via_tables, via_edges);
        }
    }

    #[test]
    fn pairwise_criterion_agrees_on_every_small_orientation() {
        for n in 1..=2 {
            for m in all_orientations(n) {
                assert_eq!(is_uso(&m).unwrap(), is_uso_pairwise(&m).unwrap(), "{m:?}");
            }
        }
        // n = 3: all 4096 orientations via edge assignments
        let n = 3u32;
        for assignment in 0u32..4096 {
            let mut table = vec![0u32; 8];
            let mut i = 0;
            for lambda in 1..=n {
                for v in SubsetMask::full(n).subsets().filter(|v| !v.has(lambda)) {
                    let e = SubsetMask::singleton(lambda);
                    let tail = if assignment >> i & 1 == 1 { v } else { v.union(e) };
                    table[tail.index()] |= e.bits();
                    i += 1;
                }
            }
            let m = Outmap::from_table(n, table).unwrap();
            assert_eq!(is_uso(&m).unwrap(), is_uso_pairwise(&m).unwrap());
        }
    }

    #[test]
    fn usos_have_one_sink_per_subcube_and_are_bijections() {
        for m in enumerate_usos(3).unwrap() {
            assert!(is_bijection(&m));
            for c in enumerate_subcubes(3).unwrap() {
                assert_eq!(subcube_sinks(&m, &c).len(), 1);
            }
        }
    }

    #[test]
    fn sink_is_in_exactly_one_facet() {
        for m in enumerate_usos(3).unwrap().step_by(7) {
            for lambda in 1..=3 {
                let (lo, up) = lambda_facets(3, lambda).unwrap();
                assert!(decide(&m, &lo).unwrap() ^ decide(&m, &up).unwrap());
            }
        }
    }

    #[test]
    fn products_of_two_dim_usos() {
        let usos: Vec<_> = enumerate_usos(2).unwrap().collect();
        assert_eq!(usos.len(), 12);
        for a in &usos {
            for b in &usos {
                for dir in [Direction::Up, Direction::Down] {
                    assert!(is_uso(&Outmap::combine(a, b, dir).unwrap()).unwrap());
                }
            }
        }
        let ones: Vec<_> = enumerate_usos(1).unwrap().collect();
        for a in &ones {
            for b in &ones {
                for dir in [Direction::Up, Direction::Down] {
                    assert!(is_uso(&Outmap::combine(a, b, dir).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn flips_preserve_uso_and_move_sink() {
        for m in enumerate_usos(3).unwrap() {
            for flips in SubsetMask::full(3).subsets() {
                let f = m.flip(flips).unwrap();
                assert!(is_uso(&f).unwrap());
                let expected = m.vertices().find(|&w| m.eval(w) == flips).unwrap();
                assert_eq!(global_sink(&f).unwrap(), expected);
            }
        }
    }

    #[test]
    fn generated_families_are_usos() {
        for n in 1..=8 {
            assert!(is_uso(&Outmap::psi(n).unwrap()).unwrap());
        }
        for n in 1..=6 {
            for seed in 0..10 {
                let m = Outmap::random_uso(n, seed).unwrap();
                assert!(is_uso(&m).unwrap());
                assert!(is_uso_pairwise(&m).unwrap());
            }
        }
    }

    #[test]
    fn brute_force_decision_oracle() {
        let m = example_uso();
        let oracle = BruteForceDecision::new(&m).unwrap();
        assert!(oracle.decide(&Subcube::new(set(&[1]), set(&[1, 3])).unwrap()));
        assert!(BruteForceDecision::new(&Outmap::from_table(1, vec![0, 0]).unwrap()).is_err());
    }
}
