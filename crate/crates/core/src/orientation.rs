//! Outmap tables and the constructions used to build unique sink orientations.
//!
//! An [`Outmap`] stores `s(v)` for every vertex `v` of the `n`-cube. The edge
//! `(v, v ⊕ {λ})` points away from `v` iff `λ ∈ s(v)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{check_dim, SubsetMask};
use crate::error::{Result, UsoError};

/// Cap on the dimension of dense outmap tables (`2^20` entries).
pub const MAX_TABLE_DIM: u32 = 20;

const HEADER: &str = "uso-map v1";

/// Anything that answers outmap queries `v ↦ s(v)`.
pub trait OutmapOracle {
    fn dim(&self) -> u32;
    fn eval(&self, v: SubsetMask) -> SubsetMask;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Outmap {
    n: u32,
    table: Vec<SubsetMask>,
}

/// Orientation of the new edges in a product `lower ↑ upper` / `lower ↓ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// All new edges point from the lower facet to the upper facet.
    Up,
    /// All new edges point from the upper facet to the lower facet.
    Down,
}

impl FromStr for Direction {
    type Err = UsoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            _ => Err(UsoError::Parse(format!("direction must be 'up' or 'down', got {s:?}"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

impl Outmap {
    /// Builds an outmap from raw bitmasks indexed by vertex.
    pub fn from_table(n: u32, table: Vec<u32>) -> Result<Self> {
        check_dim(n, MAX_TABLE_DIM, "dense outmap tables")?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(UsoError::TableLength {
                got: table.len(),
                expected,
            });
        }
        let table = table
            .into_iter()
            .map(|bits| {
                let m = SubsetMask::new(bits);
                if m.fits(n) {
                    Ok(m)
                } else {
                    Err(UsoError::MaskOutOfRange { mask: bits as u64, n })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Outmap { n, table })
    }

    fn from_masks_unchecked(n: u32, table: Vec<SubsetMask>) -> Self {
        debug_assert_eq!(table.len(), 1 << n);
        Outmap { n, table }
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.n
    }

    /// Number of vertices, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[SubsetMask] {
        &self.table
    }

    pub fn to_bits(&self) -> Vec<u32> {
        self.table.iter().map(|m| m.bits()).collect()
    }

    /// `s(v)`. Panics if `v` is not a vertex of the cube; see [`Outmap::get`].
    #[inline]
    pub fn eval(&self, v: SubsetMask) -> SubsetMask {
        self.table[v.index()]
    }

    #[inline]
    pub fn get(&self, v: SubsetMask) -> Option<SubsetMask> {
        self.table.get(v.index()).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = SubsetMask> {
        SubsetMask::full(self.n).subsets()
    }

    /// True iff every edge is directed exactly one way: for all `v` and `λ`,
    /// exactly one of `v` and `v ⊕ {λ}` lists `λ` as outgoing.
    pub fn is_orientation(&self) -> bool {
        (1..=self.n).all(|lambda| {
            let e = SubsetMask::singleton(lambda);
            self.vertices()
                .filter(|v| !v.has(lambda))
                .all(|v| self.eval(v).sym_diff(self.eval(v.union(e))).has(lambda))
        })
    }

    /// Reverses every edge whose direction lies in `flips`: `s'(v) = flips ⊕ s(v)`.
    pub fn flip(&self, flips: SubsetMask) -> Result<Outmap> {
        if !flips.fits(self.n) {
            return Err(UsoError::MaskOutOfRange {
                mask: flips.bits() as u64,
                n: self.n,
            });
        }
        Ok(Outmap::from_masks_unchecked(
            self.n,
            self.table.iter().map(|s| s.sym_diff(flips)).collect(),
        ))
    }

    /// Stacks `lower` and `upper` as the facets without and with the new
    /// direction `n + 1`, orienting all new edges according to `dir`.
    pub fn combine(lower: &Outmap, upper: &Outmap, dir: Direction) -> Result<Outmap> {
        if lower.n != upper.n {
            return Err(UsoError::DimensionMismatch {
                left: lower.n,
                right: upper.n,
            });
        }
        let n = lower.n;
        check_dim(n + 1, MAX_TABLE_DIM, "dense outmap tables")?;
        let top = SubsetMask::singleton(n + 1);
        let (lo_extra, up_extra) = match dir {
            Direction::Up => (top, SubsetMask::EMPTY),
            Direction::Down => (SubsetMask::EMPTY, top),
        };
        let table = lower
            .table
            .iter()
            .map(|s| s.union(lo_extra))
            .chain(upper.table.iter().map(|s| s.union(up_extra)))
            .collect();
        Ok(Outmap::from_masks_unchecked(n + 1, table))
    }

    /// The uniform orientation `s(v) = v ⊕ a`, whose sink is `a`.
    pub fn uniform(n: u32, a: SubsetMask) -> Result<Outmap> {
        check_dim(n, MAX_TABLE_DIM, "dense outmap tables")?;
        if !a.fits(n) {
            return Err(UsoError::MaskOutOfRange {
                mask: a.bits() as u64,
                n,
            });
        }
        Ok(Outmap::from_masks_unchecked(
            n,
            SubsetMask::full(n).subsets().map(|v| v.sym_diff(a)).collect(),
        ))
    }

    /// The family whose `∅`-orbit has period `2^n`.
    ///
    /// Starts from the single edge `∅ → {1}` and unfolds
    /// `s_{k+1}(v) = {k+1} ∪ s_k(v)` if `k+1 ∉ v`, else `v \ {k+1}`.
    pub fn psi(n: u32) -> Result<Outmap> {
        check_dim(n, MAX_TABLE_DIM, "dense outmap tables")?;
        let mut table = vec![SubsetMask::singleton(1), SubsetMask::EMPTY];
        for k in 1..n {
            let top = SubsetMask::singleton(k + 1);
            let half = table.len();
            table.reserve(half);
            for i in 0..half {
                let lower = table[i];
                table[i] = lower.union(top);
                // `v \ {k+1}` for the upper vertex `v = i ∪ {k+1}` is just `i`.
                table.push(SubsetMask::new(i as u32));
            }
        }
        Ok(Outmap::from_masks_unchecked(n, table))
    }

    /// Deterministic pseudo-random USO from the flip-product family.
    ///
    /// Both facets are generated recursively, joined by [`Outmap::combine`]
    /// with a random direction, then flipped by a random direction set. This
    /// is not uniform over all USOs.
    pub fn random_uso(n: u32, seed: u64) -> Result<Outmap> {
        check_dim(n, MAX_TABLE_DIM, "dense outmap tables")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(random_flip_product(n, &mut rng))
    }

    /// Renders the `uso-map v1` text form.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(16 + self.table.len() * 4);
        out.push_str(HEADER);
        out.push('\n');
        out.push_str(&format!("n={}\n", self.n));
        for (i, s) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&s.bits().to_string());
        }
        out.push('\n');
        out
    }

    /// Parses the `uso-map v1` text form.
    pub fn deserialize(text: &str) -> Result<Outmap> {
        if !text.ends_with('\n') {
            return Err(UsoError::Parse("missing trailing newline".into()));
        }
        let mut lines = text.split('\n');
        if lines.next() != Some(HEADER) {
            return Err(UsoError::Parse(format!("first line must be {HEADER:?}")));
        }
        let n: u32 = lines
            .next()
            .and_then(|l| l.strip_prefix("n="))
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| UsoError::Parse("second line must be n=<dimension>".into()))?;
        check_dim(n, MAX_TABLE_DIM, "dense outmap tables")?;
        let table = lines
            .flat_map(str::split_ascii_whitespace)
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| UsoError::Parse(format!("bad entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Outmap::from_table(n, table)
    }
}

fn random_flip_product(n: u32, rng: &mut ChaCha8Rng) -> Outmap {
    if n == 1 {
        let s = if rng.random::<bool>() { [1, 0] } else { [0, 1] };
        return Outmap::from_masks_unchecked(1, s.map(SubsetMask::new).to_vec());
    }
    let lower = random_flip_product(n - 1, rng);
    let upper = random_flip_product(n - 1, rng);
    let dir = if rng.random::<bool>() {
        Direction::Up
    } else {
        Direction::Down
    };
    let flips = SubsetMask::new(rng.random_range(0..=SubsetMask::full(n).bits()));
    Outmap::combine(&lower, &upper, dir)
        .and_then(|m| m.flip(flips))
        .expect("dimensions agree by construction")
}

impl OutmapOracle for Outmap {
    fn dim(&self) -> u32 {
        self.n
    }

    fn eval(&self, v: SubsetMask) -> SubsetMask {
        Outmap::eval(self, v)
    }
}

impl fmt::Debug for Outmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outmap(n={}, {:?})", self.n, self.to_bits())
    }
}
