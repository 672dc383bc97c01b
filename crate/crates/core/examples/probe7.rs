// Coarse curve dump for the pair-battery exchange sweep.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::TimeGrid;
use qb_core::focksim::{self, BasisKind, SystemSpec};

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    let dark = effective_battery(&p, true).unwrap();
    let grid = TimeGrid::new(40.0, 4001).unwrap();
    for (n_atoms, photons) in [(2usize, 2usize), (3usize, 3usize)] {
        println!("=== N={n_atoms} ===");
        let mut rows: Vec<Vec<f64>> = Vec::new();
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
            rows.push(w.y().to_vec());
        }
        println!("t      V=0     V=0.5   V=1     V=2");
        for k in (0..=400).step_by(25) {
            let t = k as f64 * 0.01 * 40.0 / 4.0; // 4001 pts over 40 => step 0.01*... 
            let idx = k * 10;
            println!(
                "{:5.2}  {:6.3}  {:6.3}  {:6.3}  {:6.3}",
                grid.times()[idx], rows[0][idx], rows[1][idx], rows[2][idx], rows[3][idx]
            );
            let _ = t;
        }
    }
}
