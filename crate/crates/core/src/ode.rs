//! Scalar autonomous Dormand–Prince 5(4) stepping with dense output.

// Butcher tableau; the right-hand side is autonomous so the c-nodes are unused.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Continuous extension.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Fourth-order interpolant over one accepted step `[x0, x0 + h]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseStep {
    pub x0: f64,
    pub h: f64,
    coeffs: [f64; 5],
}

impl DenseStep {
    pub fn x1(&self) -> f64 {
        self.x0 + self.h
    }

    /// Interpolated value at `x`, intended for `x` within the step.
    pub fn eval(&self, x: f64) -> f64 {
        let th = (x - self.x0) / self.h;
        let th1 = 1.0 - th;
        let [r1, r2, r3, r4, r5] = self.coeffs;
        r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)))
    }

    pub fn y0(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn y1(&self) -> f64 {
        self.coeffs[0] + self.coeffs[1]
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Trial {
    pub y: f64,
    /// Derivative at the new point (first stage of the next step).
    pub f: f64,
    pub err: f64,
    pub dense: DenseStep,
}

/// One Dormand–Prince trial step from `(x, y)` with slope `f0 = f(y)`.
pub fn dp5_step<F: Fn(f64) -> f64>(f: &F, x: f64, y: f64, f0: f64, h: f64) -> Trial {
    let k1 = f0;
    let k2 = f(y + h * A21 * k1);
    let k3 = f(y + h * (A31 * k1 + A32 * k2));
    let k4 = f(y + h * (A41 * k1 + A42 * k2 + A43 * k3));
    let k5 = f(y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    let k6 = f(y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
    let k7 = f(y_new);
    let err = (h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)).abs();

    let ydiff = y_new - y;
    let bspl = h * k1 - ydiff;
    let coeffs =
        [y, ydiff, bspl, ydiff - h * k7 - bspl, h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7)];
    Trial { y: y_new, f: k7, err, dense: DenseStep { x0: x, h, coeffs } }
}

/// PI step-size controller.
#[derive(Debug, Clone, Copy)]
pub struct PiController {
    err_old: f64,
}

impl Default for PiController {
    fn default() -> Self {
        PiController { err_old: 1e-4 }
    }
}

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const ALPHA: f64 = 0.2 - 0.75 * BETA;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

impl PiController {
    /// Step factor for a scaled error `err_ratio = err / tol`.
    /// Accepted steps (`err_ratio <= 1`) update the controller memory.
    pub fn factor(&mut self, err_ratio: f64) -> f64 {
        let e = err_ratio.max(1e-10);
        if e <= 1.0 {
            let fac = SAFETY * e.powf(-ALPHA) * self.err_old.powf(BETA);
            self.err_old = e.max(1e-4);
            fac.clamp(FAC_MIN, FAC_MAX)
        } else {
            (SAFETY * e.powf(-ALPHA)).clamp(FAC_MIN, 1.0)
        }
    }
}
