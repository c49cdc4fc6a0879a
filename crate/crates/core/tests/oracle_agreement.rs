use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spantourn::driver::{aut_spanning, iso_spanning};
use spantourn::gen::random_colored_tournament;
use spantourn::perm::Permutation;
use spantourn::search::{brute_aut, brute_iso};

fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
    v.sort_by(|a, b| a.images().cmp(b.images()));
    v
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

#[test]
fn random_instances_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..120u64 {
        let n = [1, 3, 4, 5, 6, 7, 8][rng.gen_range(0..7)];
        let (x, k) = random_colored_tournament(n, rng.gen_range(1..=2), rng.gen_range(1..=4), seed).unwrap();
        let aut = aut_spanning(&x, k).unwrap();
        assert!(aut.same_group(&brute_aut(&x, 9).unwrap()), "aut seed {seed}");
        let y = if rng.gen_bool(0.5) {
            x.relabel(&random_perm(&mut rng, n))
        } else {
            random_colored_tournament(n, 2, 4, seed + 1000).unwrap().0
        };
        if !spantourn::structures::is_k_spanning(&y, k, spantourn::structures::SpanningMode::Strong).unwrap() {
            continue;
        }
        let coset = iso_spanning(&x, &y, k).unwrap();
        assert_eq!(sorted(coset.elements()), sorted(brute_iso(&x, &y, 9).unwrap()), "iso seed {seed}");
    }
}
