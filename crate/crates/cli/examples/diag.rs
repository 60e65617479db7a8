use polytrack::GtSchedule;
use polytrack_cli::{compare_run, generate_scenario, CompareOptions, GeneratorConfig};

fn main() {
    let mut scenarios = Vec::new();
    for i in 0..50usize {
        let (l, classes, distractors) = if i % 2 == 0 { (1, 1, 4) } else { (2, 3, 1) };
        let cfg = GeneratorConfig {
            frames: 5 + i % 6,
            participants: l,
            words: 1 + i % 3,
            detections_per_class: 64,
            classes,
            noise_sigma: 2.0,
            distractor_count: distractors,
            seed: 6000 + i as u64,
        };
        scenarios.push((format!("study{i:02}"), generate_scenario(&cfg).unwrap()));
    }
    let options = CompareOptions {
        schedule: GtSchedule {
            restarts: 20,
            iters_per_restart: 100,
            refine_iters: 1000,
            epsilon: 0.01,
            early_stop_rel_tol: 0.0,
            seed: 2024,
        },
        row_cap: 10_000,
    };
    let report = compare_run(&scenarios, &options);
    for r in &report.scenarios {
        if r.rel_err_pct.unwrap_or(0.0) > 0.5 {
            println!(
                "{}: exact {:>9.4} rounded {:>9.4} relaxed {:>9.4} err {:>7.3}%",
                r.name, r.exact.unwrap(), r.rounded, r.relaxed, r.rel_err_pct.unwrap()
            );
        }
    }
    println!("mean {:.3}%", report.aggregate.mean_rel_err_pct.unwrap());
}
