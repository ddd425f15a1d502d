use schurkit::par::Mode;
use schurkit::selftest::run_battery;
fn main() {
    let t0 = std::time::Instant::now();
    let scale: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let r = run_battery(1, Mode::Parallel, scale);
    for p in &r.properties {
        println!("{:40} trials {:6} failures {}", p.name, p.trials, p.failures);
    }
    println!("all_pass: {} in {:?}", r.all_pass, t0.elapsed());
}
