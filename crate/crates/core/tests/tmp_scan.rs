use lambdagw::abelian::format_invariants;
use lambdagw::filtration::*;
use lambdagw::lambdaring::*;
use lambdagw::models::*;
use std::time::Instant;
#[test]
fn scan() {
    for spec in all_builtins() {
        let m = spec.build().unwrap();
        let t = Instant::now();
        let sp = verify_special_basis(&m, 3).unwrap();
        let ts = t.elapsed();
        let t = Instant::now();
        let f = gamma_filtration(&m, 8, 2).unwrap();
        let gr: Vec<String> = f.graded.iter().map(|g| format_invariants(g)).collect();
        eprintln!("{} special={} ({:?}) exact={} cap={} filt {:?} gr={:?} warn={:?}", m.name(), sp.passed(), ts, f.exact, f.weight_cap, t.elapsed(), gr, f.warnings);
        if let Some(c) = sp.first_failure() { eprintln!("   {:?}", c); }
    }
}
