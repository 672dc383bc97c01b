// Pulsed-drive probe: dissipation-free vs dressed vs bare batteries.

use qb_core::eit::{effective_battery, EitParams};
use qb_core::fitkit::TimeGrid;
use qb_core::focksim::{self, BasisKind, PulseSpec, SystemSpec};
use qb_core::C64;

fn main() {
    let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap();
    let dark = effective_battery(&p, true).unwrap();
    let bare = effective_battery(&p, false).unwrap();
    let free = C64::new(dark.x1.re, 0.0);
    let grid = TimeGrid::new(10.0, 4001).unwrap();
    let pulse = PulseSpec::new(2.0, 1.6, 0.8, dark.x1.re).unwrap();

    for v in [2.0, 1.0] {
        let mut curves = Vec::new();
        for (label, x1) in [("free", free), ("eit", dark.x1), ("bare", bare.x1)] {
            let spec = SystemSpec {
                n_atoms: 2,
                n_max: 0,
                omega: 0.0,
                x1,
                j: 0.0,
                v,
                basis: BasisKind::SymmetricDicke,
            };
            let psi0 = focksim::initial_photons(&spec, 0).unwrap();
            let states = focksim::evolve_pulsed(&spec, &pulse, &psi0, &grid).unwrap();
            let (_, w) = focksim::observables(&spec, &states, &grid).unwrap();
            curves.push((label, w));
        }
        let peak = curves[0].1.max_y();
        let dev = |a: &qb_core::TimeSeries, b: &qb_core::TimeSeries| -> f64 {
            a.y().iter().zip(b.y()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        };
        println!(
            "V={v}: peak W_free = {:.4}; dev(eit) = {:.4} ({:.1}% of peak); dev(bare) = {:.4} ({:.1}%)",
            peak,
            dev(&curves[0].1, &curves[1].1),
            100.0 * dev(&curves[0].1, &curves[1].1) / peak,
            dev(&curves[0].1, &curves[2].1),
            100.0 * dev(&curves[0].1, &curves[2].1) / peak,
        );
    }
}
