// scratch diagnostic: equilibrium means across supports, xi, n
use netmix::assort::undirected_assortativity;
use netmix::rewire::{initial_network, link_distribution, rewire_chain, StrengthDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mean_achieved(d: &StrengthDistribution, xi: f64, n: usize, steps_per_n: usize, reps: u64) -> (f64, f64) {
    let link = link_distribution(d, xi).unwrap();
    let mut values = Vec::new();
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + rep);
        let g0 = initial_network(d, n, &mut rng).unwrap();
        let g = rewire_chain(&g0, &link, steps_per_n * n, &mut rng).unwrap();
        values.push(undirected_assortativity(&g, true).unwrap());
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt();
    (mean, sd)
}

fn main() {
    let two = StrengthDistribution::new(vec![1, 2], vec![0.5, 0.5]).unwrap();
    let narrow = StrengthDistribution::power_law_with_cutoff(10, 30, 2.5, 100.0).unwrap();
    let paper = StrengthDistribution::power_law_with_cutoff(10, 100, 2.5, 100.0).unwrap();

    for xi in [0.2, 0.5, 0.8] {
        let (m, s) = mean_achieved(&two, xi, 500, 2000, 8);
        println!("two-point  xi={xi}: mean={m:+.4} sd={s:.4} (n=500, 2000n)");
    }
    for xi in [0.2, 0.5, 0.8] {
        let (m, s) = mean_achieved(&narrow, xi, 500, 2000, 8);
        println!("narrow     xi={xi}: mean={m:+.4} sd={s:.4} (n=500, 2000n)");
    }
    for xi in [0.2, 0.5, 0.8] {
        let (m, s) = mean_achieved(&paper, xi, 500, 1000, 10);
        println!("paper n500 xi={xi}: mean={m:+.4} sd={s:.4} (n=500, 1000n)");
    }
    for xi in [0.2, 0.5, 0.8] {
        let (m, s) = mean_achieved(&paper, xi, 2000, 5000, 5);
        println!("paper n2k  xi={xi}: mean={m:+.4} sd={s:.4} (n=2000, 5000n)");
    }
}
