use coldgas::gp::*;

fn main() {
    let cfg = GPConfig::new(TrapSpec::harmonic(0.25), 0.0, 0.0, Grid::new(Dim::Two, 96, 6.0)).unwrap();
    let opts = SolverOpts { tol: 1e-9, max_iter: 30_000, restarts: 1, record_trace: true, ..SolverOpts::default() };
    let st = minimize_gp_with(&cfg, 7, &opts);
    println!("converged={} iters={} E={:.9} res={:.3e}", st.converged, st.iterations, st.energy.total, st.residual_norm);
    let tr = st.energy_trace.as_ref().unwrap();
    println!("trace len {} first {:.6} last {:.12}", tr.len(), tr[0], tr[tr.len()-1]);
    for k in [10usize, 100, 1000, 5000, 10000, 20000] {
        if k < tr.len() { println!("E[{k}] = {:.12}", tr[k]); }
    }
}
