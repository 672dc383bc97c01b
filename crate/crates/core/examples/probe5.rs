// Exchange-splitting sweeps: first-maximum delay (N=2) and peak suppression (N=3).

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::TimeGrid;
use qb_core::focksim::{self, BasisKind, SystemSpec};

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    let dark = effective_battery(&p, true).unwrap();
    let grid = TimeGrid::new(40.0, 4001).unwrap();
    for (n_atoms, photons) in [(2usize, 2usize), (3, 3)] {
        println!("N={n_atoms}, photons={photons}:");
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
            let (mut best_t, mut best) = (0.0, f64::NEG_INFINITY);
            for (&t, &y) in w.t().iter().zip(w.y()) {
                if y > best {
                    best = y;
                    best_t = t;
                }
            }
            println!("  V={v}: max W = {best:.4} at t = {best_t:.3}");
        }
    }
}
