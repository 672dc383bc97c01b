// Window-sensitivity probe for the three-battery three-photon fits.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::{fit_envelope, TimeGrid};
use qb_core::focksim::{self, BasisKind, SystemSpec};

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    for with_eit in [false, true] {
        let battery = effective_battery(&p, with_eit).unwrap();
        let spec = SystemSpec {
            n_atoms: 3,
            n_max: 7,
            omega: 1.0,
            x1: battery.x1,
            j: 0.5,
            v: 0.0,
            basis: BasisKind::SymmetricDicke,
        };
        println!("with_eit={with_eit} (gamma = {:.4e})", battery.gamma());
        for t_end in [15.0, 20.0, 30.0, 40.0, 60.0, 100.0] {
            let grid = TimeGrid::new(t_end, 2000).unwrap();
            let psi0 = focksim::initial_photons(&spec, 3).unwrap();
            let states = focksim::evolve_series(&spec, &psi0, &grid).unwrap();
            let (e3, w3) = focksim::observables(&spec, &states, &grid).unwrap();
            let fe = fit_envelope(&e3).map(|f| (f.rate, f.peaks_used, f.residual));
            let fw = fit_envelope(&w3).map(|f| (f.rate, f.peaks_used, f.residual));
            println!("  t_end={t_end:>5}: E {fe:?}");
            println!("              W {fw:?}");
        }
    }
}
