use congruence_primes::bigmath::{rat, Rational};
use congruence_primes::numberfield::{ell_divides_norm, reduce, QuadField, QuadFieldElem, ResidueEmbedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 1000;

fn random_rational(rng: &mut ChaCha8Rng, ell: u64) -> Rational {
    let n = rng.gen_range(-500i64..=500);
    let d = loop {
        let d = rng.gen_range(1i64..=60);
        if d as u64 % ell != 0 {
            break d;
        }
    };
    rat(n, d)
}

fn random_elem(rng: &mut ChaCha8Rng, field: &QuadField, ell: u64) -> QuadFieldElem {
    field.elem(random_rational(rng, ell), random_rational(rng, ell))
}

#[test]
fn norm_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in [-44, -1, 5, 13] {
        let field = QuadField::new(d).unwrap();
        for _ in 0..SAMPLES {
            let x = random_elem(&mut rng, &field, 67);
            let y = random_elem(&mut rng, &field, 67);
            assert_eq!((&x * &y).norm(), x.norm() * y.norm(), "D = {d}, x = {x}, y = {y}");
        }
    }
}

#[test]
fn norm_matches_conjugate_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let field = QuadField::new(-44).unwrap();
    for _ in 0..SAMPLES {
        let x = random_elem(&mut rng, &field, 67);
        let prod = &x * &x.conjugate();
        assert!(prod.is_rational());
        assert_eq!(prod.a(), &x.norm());
        assert_eq!(x.conjugate().conjugate(), x);
    }
}

#[test]
fn embedding_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let field = QuadField::new(-44).unwrap();
    for emb in ResidueEmbedding::at_split_prime(-44, 67).unwrap() {
        let ell = emb.ell();
        for _ in 0..SAMPLES {
            let x = random_elem(&mut rng, &field, ell);
            let y = random_elem(&mut rng, &field, ell);
            let (rx, ry) = (reduce(&x, &emb).unwrap(), reduce(&y, &emb).unwrap());
            assert_eq!(reduce(&(&x + &y), &emb).unwrap(), (rx + ry) % ell);
            assert_eq!(reduce(&(&x * &y), &emb).unwrap(), rx * ry % ell);
            assert_eq!(reduce(&(-&x), &emb).unwrap(), (ell - rx) % ell);
            assert_eq!(reduce(&x.conjugate(), &emb.conjugate()).unwrap(), rx);
        }
    }
}

#[test]
fn norm_divisibility_iff_some_embedding_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let field = QuadField::new(-44).unwrap();
    let [e1, e2] = ResidueEmbedding::at_split_prime(-44, 67).unwrap();
    let mut hits = 0;
    for i in 0..SAMPLES {
        // Every fourth sample is pushed into a prime above 67.
        let x = if i % 4 == 0 {
            let y = random_elem(&mut rng, &field, 67);
            &y * &field.elem(rat(-(e1.root() as i64), 1), rat(1, 1))
        } else {
            random_elem(&mut rng, &field, 67)
        };
        let vanishes = reduce(&x, &e1).unwrap() == 0 || reduce(&x, &e2).unwrap() == 0;
        assert_eq!(ell_divides_norm(&x, 67), vanishes, "x = {x}");
        hits += usize::from(vanishes);
    }
    assert!(hits >= SAMPLES / 4);
}
