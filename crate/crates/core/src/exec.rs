//! Engine configuration and the data-parallel map used for independent tasks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::PrimeField;

/// How independent tasks (multidegree entries, catalog instances) are run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool. Without the `parallel` feature this runs sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Order-preserving map. Results never depend on scheduling.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.into_iter().map(f).collect(),
            Execution::Parallel => parallel_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    items.into_iter().map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    pub seed: u64,
    pub prime: u64,
    /// Extra attempts after the first for every randomized count.
    pub retries: u32,
    pub execution: Execution,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { seed: 0, prime: PrimeField::DEFAULT_PRIME, retries: 5, execution: Execution::default() }
    }
}

impl EngineConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn with_prime(&self, prime: u64) -> Self {
        Self { prime, ..self.clone() }
    }

    pub fn with_execution(&self, execution: Execution) -> Self {
        Self { execution, ..self.clone() }
    }

    pub fn attempts(&self) -> u32 {
        self.retries + 1
    }

    /// A generator determined by the master seed and a task path.
    pub fn rng(&self, path: &[u64]) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, path))
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a task path into a master seed.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix(master), |acc, &x| splitmix(acc ^ splitmix(x)))
}
