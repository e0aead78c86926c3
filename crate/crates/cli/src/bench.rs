//! Synthetic work measurements for the general solver.

use std::time::Instant;

use maxdensity::synth;
use maxdensity::{solve, Counters, NoObserver, ProblemInstance};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Uniform,
    Alternating,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub family: &'static str,
    pub n: usize,
    pub millis: f64,
    pub pushes: u64,
    pub pops: u64,
    pub vbest_steps: u64,
    pub init_steps: u64,
    pub total: u64,
    pub per_element: f64,
}

fn instance(family: Family, rng: &mut StdRng, n: usize, w_min: i64, w_max: i64) -> ProblemInstance {
    let seq = match family {
        Family::Uniform => synth::uniform_values(rng, n),
        Family::Alternating => synth::alternating_widths(rng, n, w_max),
    };
    ProblemInstance::new(seq, w_min, w_max).expect("bench bounds are valid")
}

pub fn run(families: &[Family], sizes: &[usize], w_min: i64, w_max: i64, seed: u64) -> Vec<Row> {
    let mut rows = Vec::new();
    for &family in families {
        for &n in sizes {
            let mut rng = StdRng::seed_from_u64(seed ^ n as u64);
            let inst = instance(family, &mut rng, n, w_min, w_max);
            let start = Instant::now();
            let counters = match solve(&inst, &mut NoObserver) {
                Ok(r) => r.counters,
                Err(_) => Counters::default(),
            };
            let millis = start.elapsed().as_secs_f64() * 1e3;
            rows.push(Row {
                family: match family {
                    Family::Uniform => "uniform",
                    Family::Alternating => "alternating",
                },
                n,
                millis,
                pushes: counters.pushes,
                pops: counters.pops,
                vbest_steps: counters.vbest_steps,
                init_steps: counters.init_steps,
                total: counters.total(),
                per_element: counters.total() as f64 / n.max(1) as f64,
            });
        }
    }
    rows
}

pub fn print_table(rows: &[Row]) {
    println!("family\tn\tms\tpushes\tpops\tvbest\tinit\ttotal\twork/n");
    for r in rows {
        println!(
            "{}\t{}\t{:.2}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
            r.family,
            r.n,
            r.millis,
            r.pushes,
            r.pops,
            r.vbest_steps,
            r.init_steps,
            r.total,
            r.per_element
        );
    }
}
