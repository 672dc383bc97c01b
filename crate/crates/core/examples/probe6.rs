// Window dependence of the exchange-splitting sweeps.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::TimeGrid;
use qb_core::focksim::{self, BasisKind, SystemSpec};

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    let dark = effective_battery(&p, true).unwrap();
    let grid = TimeGrid::new(40.0, 4001).unwrap();
    for (n_atoms, photons) in [(2usize, 2usize), (3, 3)] {
        println!("N={n_atoms}:");
        for v in [0.0, 0.5, 1.0, 2.0] {
            let spec = SystemSpec {
                n_atoms,
                n_max: photons + 4,
                omega: 1.0,
                x1: dark.x1,
                j: 0.5,
                v,
                basis: BasisKind::SymmetricDicke,
            };
            let psi0 = focksim::initial_photons(&spec, photons).unwrap();
            let states = focksim::evolve_series(&spec, &psi0, &grid).unwrap();
            let (_, w) = focksim::observables(&spec, &states, &grid).unwrap();
            let max_until = |t_max: f64| -> f64 {
                w.t()
                    .iter()
                    .zip(w.y())
                    .filter(|(&t, _)| t <= t_max)
                    .map(|(_, &y)| y)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            // First local maximum above 30% of the 40-window global max.
            let global = max_until(40.0);
            let mut first_t = f64::NAN;
            let ys = w.y();
            for i in 1..ys.len() - 1 {
                if ys[i] > ys[i - 1] && ys[i] > ys[i + 1] && ys[i] > 0.3 * global {
                    first_t = w.t()[i];
                    break;
                }
            }
            println!(
                "  V={v}: max[0,10]={:.3} max[0,15]={:.3} max[0,20]={:.3} max[0,40]={:.3} first_peak_t={first_t:.2}",
                max_until(10.0), max_until(15.0), max_until(20.0), global
            );
        }
    }
}
