// scratch diagnostic: achieved assortativity vs chain length
use netmix::assort::undirected_assortativity;
use netmix::rewire::{
    initial_network, link_distribution, rewire_chain, StrengthDistribution,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let d = StrengthDistribution::power_law_with_cutoff(10, 100, 2.5, 100.0).unwrap();
    for xi in [0.2, 0.5, 0.8] {
        let link = link_distribution(&d, xi).unwrap();
        for n in [200usize, 500] {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let g0 = initial_network(&d, n, &mut rng).unwrap();
            let mut g = g0.clone();
            print!("xi={xi} n={n}: start={:+.4}", undirected_assortativity(&g, true).unwrap());
            let mut done = 0usize;
            for target in [100, 200, 400, 800, 1600, 3200] {
                let steps = target * n - done;
                g = rewire_chain(&g, &link, steps, &mut rng).unwrap();
                done += steps;
                print!(" {}n:{:+.4}", target, undirected_assortativity(&g, true).unwrap());
            }
            println!();
        }
    }
}
