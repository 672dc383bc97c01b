// Scratch probe for envelope rates at the reference parameter sets.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::{fit_envelope, TimeGrid};
use qb_core::focksim::{self, BasisKind, SystemSpec};
use qb_core::jc::{self, JcParams};
use qb_core::{excitation, C64};

fn params() -> EitParams {
    EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap()
}

fn main() {
    let p = params();
    let grid = TimeGrid::new(100.0, 2000).unwrap();

    for with_eit in [false, true] {
        let battery = effective_battery(&p, with_eit).unwrap();
        println!(
            "battery with_eit={with_eit}: x1 = {:.6} {:+.6e} i",
            battery.x1.re, battery.x1.im
        );
        let jcp = JcParams::new(battery, 1.0, 0.5, 1).unwrap();
        let (e, w) =
            jc::energy_and_ergotropy_series(&jcp, C64::new(1.0, 0.0), C64::new(0.0, 0.0), &grid)
                .unwrap();
        let fe = fit_envelope(&e);
        let fw = fit_envelope(&w);
        println!(
            "  single-battery: E rate {:?}, W rate {:?}",
            fe.map(|f| (f.rate, f.peaks_used)),
            fw.map(|f| (f.rate, f.peaks_used))
        );
        // Probabilities in the vacuum sector.
        let jc0 = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let (pe, _pg) =
            jc::probability_series(&jc0, C64::new(1.0, 0.0), C64::new(0.0, 0.0), &grid).unwrap();
        let fp = fit_envelope(&pe);
        println!("  probability envelope rate {:?}", fp.map(|f| (f.rate, f.peaks_used)));

        // Three batteries, one photon.
        let eb = excitation::battery_energy(3, 1.0, battery.x1, 0.5, &grid).unwrap();
        let fb = fit_envelope(&eb);
        println!("  triple-battery energy rate {:?}", fb.map(|f| (f.rate, f.peaks_used)));

        // Three batteries, three photons via the Fock engine.
        let spec = SystemSpec {
            n_atoms: 3,
            n_max: 7,
            omega: 1.0,
            x1: battery.x1,
            j: 0.5,
            v: 0.0,
            basis: BasisKind::SymmetricDicke,
        };
        let psi0 = focksim::initial_photons(&spec, 3).unwrap();
        let states = focksim::evolve_series(&spec, &psi0, &grid).unwrap();
        let (e3, w3) = focksim::observables(&spec, &states, &grid).unwrap();
        let fe3 = fit_envelope(&e3);
        let fw3 = fit_envelope(&w3);
        println!(
            "  3x3 Fock: E rate {:?}, W rate {:?}",
            fe3.map(|f| (f.rate, f.peaks_used)),
            fw3.map(|f| (f.rate, f.peaks_used))
        );
    }
}
