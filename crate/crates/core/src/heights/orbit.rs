use std::collections::HashMap;

use serde::Serialize;

use crate::numerics::QuadExt;
use crate::poly::PolySpec;

/// Exact forward orbit `z, f(z), f^2(z), ...`, stopped at the first repeat,
/// an iteration cap, or a size cap on the iterates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactOrbit {
    pub points: Vec<QuadExt>,
    /// `(tail, period)` when `f(points.last())` equals `points[tail]`.
    pub cycle: Option<(usize, usize)>,
}

impl ExactOrbit {
    pub fn compute(f: &PolySpec, z: &QuadExt, max_iterations: usize, max_bits: u64) -> Self {
        Self::compute_until(f, z, max_iterations, max_bits, |_, _| false)
    }

    /// As `compute`, but also stops (without a cycle) as soon as `stop`
    /// accepts an iterate; that iterate is the last recorded point.
    pub fn compute_until(
        f: &PolySpec,
        z: &QuadExt,
        max_iterations: usize,
        max_bits: u64,
        mut stop: impl FnMut(usize, &QuadExt) -> bool,
    ) -> Self {
        let mut seen: HashMap<QuadExt, usize> = HashMap::new();
        let mut points = vec![z.clone()];
        seen.insert(z.clone(), 0);
        loop {
            let last = points.last().expect("nonempty");
            if stop(points.len() - 1, last) || points.len() > max_iterations || last.bit_size() > max_bits {
                return ExactOrbit { points, cycle: None };
            }
            let next = f.eval_quad(last);
            if let Some(&i) = seen.get(&next) {
                let period = points.len() - i;
                return ExactOrbit {
                    points,
                    cycle: Some((i, period)),
                };
            }
            seen.insert(next.clone(), points.len());
            points.push(next);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_some()
    }

    /// Index of the last computed iterate.
    pub fn last_index(&self) -> usize {
        self.points.len() - 1
    }

    /// Re-applies `f` to every recorded point and checks that the images
    /// stay inside the recorded set, closing the cycle where claimed.
    pub fn verify_closed(&self, f: &PolySpec) -> bool {
        let Some((tail, period)) = self.cycle else {
            return false;
        };
        if tail + period != self.points.len() {
            return false;
        }
        for (i, p) in self.points.iter().enumerate() {
            let image = f.eval_quad(p);
            let expected = if i + 1 < self.points.len() { &self.points[i + 1] } else { &self.points[tail] };
            if image != *expected {
                return false;
            }
        }
        true
    }
}
