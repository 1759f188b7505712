//! Sample execution strategies and seeded sampling helpers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Circle, CirclePoint, Configuration};
use crate::spine::{ChainCircle, ChainPoint, ChainVertex};

/// How independent samples of a suite are executed. Results always come
/// back in index order, so reductions do not depend on the strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
        }
    }
}

/// Independent generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_point<R: Rng>(rng: &mut R) -> CirclePoint {
    let circle = if rng.random_bool(0.5) { Circle::A } else { Circle::B };
    CirclePoint::wrapped(circle, rng.random::<f64>())
}

/// Uniform configuration with robot separation at least `min_sep`.
pub fn random_config<R: Rng>(rng: &mut R, min_sep: f64) -> Configuration {
    loop {
        let (p, q) = (random_point(rng), random_point(rng));
        if let Ok(c) = Configuration::new(p, q) {
            if c.separation() >= min_sep {
                return c;
            }
        }
    }
}

/// Chain point that is a vertex with probability 1/4.
pub fn random_chain_point<R: Rng>(rng: &mut R) -> ChainPoint {
    if rng.random_bool(0.25) {
        ChainPoint::Vertex(ChainVertex::ALL[rng.random_range(0..6)])
    } else {
        let circle = ChainCircle::ALL[rng.random_range(0..6)];
        ChainPoint::new(circle, rng.random::<f64>()).expect("θ in [0, 1)")
    }
}
