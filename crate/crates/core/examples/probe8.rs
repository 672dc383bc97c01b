// Sweep phenomenology at exact battery-cavity resonance.

use qb_core::fitkit::TimeGrid;
use qb_core::focksim::{self, BasisKind, SystemSpec};
use qb_core::C64;

fn main() {
    let x1 = C64::new(1.0, -4.9476e-4); // resonant dressed level
    let grid = TimeGrid::new(40.0, 8001).unwrap();
    for (n_atoms, photons) in [(2usize, 2usize), (3usize, 3usize)] {
        println!("=== N={n_atoms} (resonant) ===");
        for v in [0.0, 0.5, 1.0, 2.0] {
            let spec = SystemSpec {
                n_atoms,
                n_max: photons + 4,
                omega: 1.0,
                x1,
                j: 0.5,
                v,
                basis: BasisKind::SymmetricDicke,
            };
            let psi0 = focksim::initial_photons(&spec, photons).unwrap();
            let states = focksim::evolve_series(&spec, &psi0, &grid).unwrap();
            let (_, w) = focksim::observables(&spec, &states, &grid).unwrap();
            let max_until = |t_max: f64| -> f64 {
                w.t().iter().zip(w.y()).filter(|(&t, _)| t <= t_max)
                    .map(|(_, &y)| y).fold(f64::NEG_INFINITY, f64::max)
            };
            let global = max_until(40.0);
            let mut first_t = f64::NAN;
            let ys = w.y();
            for i in 1..ys.len() - 1 {
                if ys[i] > ys[i - 1] && ys[i] > ys[i + 1] && ys[i] > 0.5 * global {
                    first_t = w.t()[i];
                    break;
                }
            }
            println!(
                "  V={v}: W(0)={:.3} max[0,2.5]={:.3} max[0,5]={:.3} max[0,40]={:.3} first50%peak_t={first_t:.2}",
                ys[0], max_until(2.5), max_until(5.0), global
            );
        }
    }
}
