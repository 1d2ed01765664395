//! Explicit Runge-Kutta steppers for small fixed-dimension systems.

use crate::error::{Error, Result};

pub(crate) type State<const N: usize> = [f64; N];

fn axpy<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..N {
            out[i] += h * coef * k[i];
        }
    }
    out
}

/// One classical fourth-order step.
pub(crate) fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &State<N>, h: f64) -> State<N>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &[(1.0, &k1)]));
    let k3 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &[(1.0, &k2)]));
    let k4 = f(t + h, &axpy(y, h, &[(1.0, &k3)]));
    axpy(
        y,
        h / 6.0,
        &[(1.0, &k1), (2.0, &k2), (2.0, &k3), (1.0, &k4)],
    )
}

/// Integrates from `t0` to `t1` with `ceil((t1 - t0) / step)` equal RK4 steps.
pub(crate) fn rk4_span<const N: usize, F>(
    f: &F,
    t0: f64,
    t1: f64,
    y: State<N>,
    step: f64,
    steps_left: &mut usize,
) -> Result<State<N>>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let n = ((t1 - t0) / step).ceil().max(1.0);
    if n > *steps_left as f64 {
        return Err(Error::MaxSteps(*steps_left));
    }
    let n = n as usize;
    *steps_left -= n;
    let h = (t1 - t0) / n as f64;
    let mut y = y;
    for i in 0..n {
        y = rk4_step(f, t0 + i as f64 * h, &y, h);
    }
    Ok(y)
}

/// Adaptive Dormand-Prince 5(4) pair. Keeps its step size between spans.
pub(crate) struct DormandPrince {
    pub rel_tol: f64,
    pub abs_tol: f64,
    h: Option<f64>,
}

impl DormandPrince {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        DormandPrince {
            rel_tol,
            abs_tol,
            h: None,
        }
    }

    fn error_norm<const N: usize>(&self, y: &State<N>, y_new: &State<N>, err: &State<N>) -> f64 {
        let sum: f64 = (0..N)
            .map(|i| {
                let sc = self.abs_tol + self.rel_tol * y[i].abs().max(y_new[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum();
        (sum / N as f64).sqrt()
    }

    fn initial_step<const N: usize>(&self, f0: &State<N>, y: &State<N>, span: f64) -> f64 {
        let d0 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let d1 = f0.iter().map(|v| v * v).sum::<f64>().sqrt();
        let h = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6 * span
        } else {
            0.01 * d0 / d1
        };
        h.min(span)
    }

    pub fn span<const N: usize, F>(
        &mut self,
        f: &F,
        t0: f64,
        t1: f64,
        y: State<N>,
        steps_left: &mut usize,
    ) -> Result<State<N>>
    where
        F: Fn(f64, &State<N>) -> State<N>,
    {
        let mut t = t0;
        let mut y = y;
        let mut k1 = f(t, &y);
        let mut h = match self.h {
            Some(h) => h,
            None => self.initial_step(&k1, &y, t1 - t0),
        };
        while t < t1 {
            if *steps_left == 0 {
                return Err(Error::MaxSteps(0));
            }
            *steps_left -= 1;
            let last = t + h >= t1;
            let step = if last { t1 - t } else { h };
            if step <= 16.0 * f64::EPSILON * t.abs().max(f64::MIN_POSITIVE) {
                return Err(Error::StepSizeUnderflow { t, step });
            }

            let k2 = f(t + step / 5.0, &axpy(&y, step, &[(1.0 / 5.0, &k1)]));
            let k3 = f(
                t + 3.0 * step / 10.0,
                &axpy(&y, step, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]),
            );
            let k4 = f(
                t + 4.0 * step / 5.0,
                &axpy(
                    &y,
                    step,
                    &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)],
                ),
            );
            let k5 = f(
                t + 8.0 * step / 9.0,
                &axpy(
                    &y,
                    step,
                    &[
                        (19372.0 / 6561.0, &k1),
                        (-25360.0 / 2187.0, &k2),
                        (64448.0 / 6561.0, &k3),
                        (-212.0 / 729.0, &k4),
                    ],
                ),
            );
            let k6 = f(
                t + step,
                &axpy(
                    &y,
                    step,
                    &[
                        (9017.0 / 3168.0, &k1),
                        (-355.0 / 33.0, &k2),
                        (46732.0 / 5247.0, &k3),
                        (49.0 / 176.0, &k4),
                        (-5103.0 / 18656.0, &k5),
                    ],
                ),
            );
            let y_new = axpy(
                &y,
                step,
                &[
                    (35.0 / 384.0, &k1),
                    (500.0 / 1113.0, &k3),
                    (125.0 / 192.0, &k4),
                    (-2187.0 / 6784.0, &k5),
                    (11.0 / 84.0, &k6),
                ],
            );
            let k7 = f(t + step, &y_new);
            let err = axpy(
                &[0.0; N],
                step,
                &[
                    (71.0 / 57600.0, &k1),
                    (-71.0 / 16695.0, &k3),
                    (71.0 / 1920.0, &k4),
                    (-17253.0 / 339200.0, &k5),
                    (22.0 / 525.0, &k6),
                    (-1.0 / 40.0, &k7),
                ],
            );
            let norm = self.error_norm(&y, &y_new, &err);
            let factor = if norm == 0.0 {
                5.0
            } else {
                (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
            };

            if norm <= 1.0 {
                t = if last { t1 } else { t + step };
                y = y_new;
                k1 = k7;
                // A step shortened to land on t1 says nothing about the step
                // the dynamics allow; keep the unclipped size.
                if !last || step >= h {
                    h = step * factor;
                }
            } else {
                h = step * factor.min(1.0);
            }
        }
        self.h = Some(h);
        Ok(y)
    }
}
