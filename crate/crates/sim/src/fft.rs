//! `rustfft` behind the core transform trait.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use csd_core::{Complex64, Direction, FftBackend, Torus, TorusGrid};
use rustfft::{Fft, FftPlanner};

type Plan = Arc<dyn Fft<f64>>;

/// Planner plus a plan cache keyed by length and direction. Plans are shared
/// across threads; only plan lookup takes the lock.
pub struct RustFft {
    planner: Mutex<FftPlanner<f64>>,
    plans: Mutex<HashMap<(usize, Direction), Plan>>,
}

impl RustFft {
    pub fn new() -> Self {
        Self {
            planner: Mutex::new(FftPlanner::new()),
            plans: Mutex::default(),
        }
    }

    fn plan(&self, len: usize, direction: Direction) -> Plan {
        let mut plans = self.plans.lock().expect("fft plan cache poisoned");
        plans
            .entry((len, direction))
            .or_insert_with(|| {
                let mut p = self.planner.lock().expect("fft planner poisoned");
                match direction {
                    Direction::Forward => p.plan_fft_forward(len),
                    Direction::Inverse => p.plan_fft_inverse(len),
                }
            })
            .clone()
    }
}

impl Default for RustFft {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for RustFft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RustFft").finish_non_exhaustive()
    }
}

impl FftBackend for RustFft {
    fn transform(&self, data: &mut [Complex64], len: usize, direction: Direction) {
        if len == 0 || data.is_empty() {
            return;
        }
        assert_eq!(
            data.len() % len,
            0,
            "buffer length not a multiple of the transform length"
        );
        self.plan(len, direction).process(data);
    }
}

/// Torus on `grid` backed by a fresh `rustfft` planner.
pub fn fast_torus(grid: TorusGrid) -> Torus {
    Torus::new(grid, Arc::new(RustFft::new()))
}
