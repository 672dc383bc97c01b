// Long-window probe for the slow-decay three-battery fits.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::{fit_envelope, TimeGrid};
use qb_core::focksim::{self, BasisKind, SystemSpec};

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    let battery = effective_battery(&p, true).unwrap();
    let spec = SystemSpec {
        n_atoms: 3,
        n_max: 7,
        omega: 1.0,
        x1: battery.x1,
        j: 0.5,
        v: 0.0,
        basis: BasisKind::SymmetricDicke,
    };
    for (t_end, n) in [(500.0, 10000), (1000.0, 20000), (1500.0, 30000), (2000.0, 40000)] {
        let grid = TimeGrid::new(t_end, n).unwrap();
        let psi0 = focksim::initial_photons(&spec, 3).unwrap();
        let states = focksim::evolve_series(&spec, &psi0, &grid).unwrap();
        let (e3, w3) = focksim::observables(&spec, &states, &grid).unwrap();
        let fe = fit_envelope(&e3).map(|f| (f.rate, f.peaks_used));
        let fw = fit_envelope(&w3).map(|f| (f.rate, f.peaks_used));
        println!("t_end={t_end}: E {fe:?}  W {fw:?}");
    }
}
