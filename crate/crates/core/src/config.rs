//! Run-time limits shared by every enumeration.

use std::env;

/// Environment variable that overrides [`DEFAULT_ENUMERATION_BUDGET`].
pub const BUDGET_ENV: &str = "LIFTLAB_BUDGET";

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 26;
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;
pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Maximum number of codewords (or selectors) a single enumeration may visit.
    pub enumeration_budget: u64,
    /// Maximum number of t-subsets a design verification may tabulate.
    pub subset_budget: u64,
    pub max_field_order: u64,
    pub workers: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            max_field_order: DEFAULT_MAX_FIELD_ORDER,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl Config {
    /// Defaults, with the enumeration budget taken from `LIFTLAB_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Some(b) = env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            if b > 0 {
                cfg.enumeration_budget = b;
            }
        }
        cfg
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.enumeration_budget = budget;
        self
    }

    /// Runs `f` on a pool of `self.workers` threads.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
