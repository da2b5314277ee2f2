// scratch diagnostic: does the chain reproduce the link-class shares of l?
use netmix::assort::undirected_assortativity;
use netmix::rewire::{initial_network, link_distribution, rewire_chain, StrengthDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let d = StrengthDistribution::new(vec![1, 2], vec![0.5, 0.5]).unwrap();
    let xi = 0.5;
    let link = link_distribution(&d, xi).unwrap();
    println!(
        "target l: (1,1)={:.4} (1,2)+(2,1)={:.4} (2,2)={:.4}",
        link.l(0, 0),
        link.l(0, 1) + link.l(1, 0),
        link.l(1, 1)
    );
    let n = 200;
    let mut share = [0.0f64; 3];
    let mut corr = 0.0;
    let reps = 20;
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(900 + rep);
        let g0 = initial_network(&d, n, &mut rng).unwrap();
        let g = rewire_chain(&g0, &link, 3000 * n, &mut rng).unwrap();
        // class shares over undirected weight units
        let strength =
            |v: usize| -> u64 { (g.strength(v, netmix::StrengthKind::Total).unwrap()) as u64 };
        let mut mass = [0.0f64; 3];
        let mut total = 0.0;
        for e in g.edges() {
            if e.source < e.target {
                let (sa, sb) = (strength(e.source), strength(e.target));
                let w = 2.0 * e.weight; // undirected weight
                let class = match (sa, sb) {
                    (1, 1) => 0,
                    (2, 2) => 2,
                    _ => 1,
                };
                mass[class] += w;
                total += w;
            }
        }
        for c in 0..3 {
            share[c] += mass[c] / total / reps as f64;
        }
        corr += undirected_assortativity(&g, true).unwrap() / reps as f64;
    }
    println!(
        "empirical: (1,1)={:.4} cross={:.4} (2,2)={:.4}  corr={:.4} (target {xi})",
        share[0], share[1], share[2], corr
    );
}
