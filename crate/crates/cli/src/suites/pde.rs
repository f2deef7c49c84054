//! Central-difference residual of the backward heat equation for
//! `f_c = exp(c x - c² y / 2)` and `g_c = (x - c y) f_c`.

use heisenberg_core::verify::{pde_box_points, verify_pde};

use super::{complex, complex_label, seed_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub const X_RANGE: (f64, f64) = (-2.0, 2.0);
pub const Y_RANGE: (f64, f64) = (0.5, 2.0);

pub fn run(cfg: &RunConfig) -> SuiteOutput {
    let ctx = seed_context(cfg);
    let mut out = Collector::new(Suite::Pde, &ctx);
    let [nx, ny] = cfg.cases.pde_lattice;
    let points = pde_box_points(X_RANGE, Y_RANGE, nx, ny);
    let tol = cfg.tolerances.pde;
    for &cz in &cfg.cases.pde_exponents {
        let c = complex(cz);
        let id = format!("c={}", complex_label(c));
        match verify_pde(c, &points, cfg.cases.pde_step) {
            Ok(r) => out.metric(
                id,
                r.max(),
                tol,
                r.max() <= tol,
                format!("f_c {:e}, g_c {:e} on {nx}x{ny} points", r.f_max, r.g_max),
            ),
            Err(e) => out.error(id, &e),
        }
    }
    out.finish()
}
