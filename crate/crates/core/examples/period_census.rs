//! Histogram of `∅`-orbit periods for random flipped products grown from
//! the USOs of the 3-cube.
//!
//! `cargo run --release -p uso-core --example period_census -- 6 2000`

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uso_core::{enumerate_usos, orbit_period, Direction, Outmap, SubsetMask};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let count: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2000);
    let base: Vec<Outmap> = enumerate_usos(3).expect("n = 3").collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..count {
        let mut m = base[rng.random_range(0..base.len())].clone();
        while m.dim() < n {
            let d = m.dim();
            let other = Outmap::random_uso(d, rng.random()).expect("d within cap");
            let dir = if rng.random() { Direction::Up } else { Direction::Down };
            m = Outmap::combine(&m, &other, dir).expect("same dimension");
        }
        let m = m
            .flip(SubsetMask::new(rng.random_range(0..1 << n)))
            .expect("flip in range");
        *hist
            .entry(orbit_period(&m, SubsetMask::EMPTY).expect("bijection").period)
            .or_default() += 1;
    }
    for (l, c) in hist {
        println!("{l}\t{c}");
    }
}
