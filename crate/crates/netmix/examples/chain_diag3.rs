// scratch diagnostic: paper-scale run and long desk-scale run
use netmix::assort::undirected_assortativity;
use netmix::rewire::{initial_network, link_distribution, rewire_chain, StrengthDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let d = StrengthDistribution::power_law_with_cutoff(10, 100, 2.5, 100.0).unwrap();
    for xi in [0.2, 0.5] {
        let link = link_distribution(&d, xi).unwrap();
        // paper scale
        let n = 2000;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g0 = initial_network(&d, n, &mut rng).unwrap();
        let mut g = g0;
        let mut done = 0;
        print!("xi={xi} n=2000:");
        for target in [1000usize, 2500, 5000, 10000] {
            let steps = target * n - done;
            g = rewire_chain(&g, &link, steps, &mut rng).unwrap();
            done += steps;
            print!(" {}n:{:+.4}", target, undirected_assortativity(&g, true).unwrap());
        }
        println!();
        // very long desk scale
        let n = 500;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g0 = initial_network(&d, n, &mut rng).unwrap();
        let mut g = g0;
        let mut done = 0;
        print!("xi={xi} n=500 :");
        for target in [1000usize, 5000, 20000, 50000] {
            let steps = target * n - done;
            g = rewire_chain(&g, &link, steps, &mut rng).unwrap();
            done += steps;
            print!(" {}n:{:+.4}", target, undirected_assortativity(&g, true).unwrap());
        }
        println!();
    }
}
