use starscape::hyper::{act, MobiusMat};
use starscape::poly::IntPoly;
use rand::Rng;
use rand::SeedableRng;
use num_traits::Signed;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
    let mut n = 0;
    while n < 300 {
        let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-10i64..=10)).collect();
        let f = match IntPoly::new(&coeffs) {
            Ok(f) if f.leading_zeros() == 0 => f,
            _ => continue,
        };
        if !f.discriminant().is_negative() {
            continue;
        }
        let mut a = MobiusMat::IDENTITY;
        for _ in 0..rng.gen_range(1..=8) {
            a = a.compose(match rng.gen_range(0..3) {
                0 => MobiusMat::S,
                1 => MobiusMat::T,
                _ => MobiusMat::T.inverse(),
            });
        }
        let g = act(a, &f).unwrap();
        if g.leading_zeros() > 0 {
            continue;
        }
        if let Err(e) = starscape::roots::roots(&g, 1e-12) {
            println!("FAIL {:?} (from {:?} via {:?}): {e}", g, f, a);
            let eff = g.effective_coeffs();
            println!("height {} lead {}", g.naive_height(), eff[0]);
            break;
        }
        n += 1;
    }
    println!("checked {n}");
}
