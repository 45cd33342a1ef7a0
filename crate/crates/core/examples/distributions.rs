//! Building finite distributions and applying the estimator transforms.
//!
//! cargo run --example distributions

use qmean::dist::parse_named;
use qmean::{FiniteDist, RandomSource};

fn main() -> qmean::Result<()> {
    let x = FiniteDist::new(&[-2.0, 0.5, 3.0, 10.0], &[0.1, 0.5, 0.3, 0.1])?;
    let m = x.moments();
    println!("atoms {:?}", x.atoms().collect::<Vec<_>>());
    println!("mean {:.4}  variance {:.4}  sd {:.4}", m.mean, m.variance, m.std_dev());

    // tail-oriented quantile: largest x with Pr[X >= x] >= p
    for p in [0.05, 0.1, 0.4, 0.9] {
        println!("Q({p}) = {}", x.quantile(p)?);
    }
    println!("E[X 1{{0 < X <= 3}}] = {:.4}", x.truncated_mean(0.0, 3.0)?);

    let (above, below) = x.shift_split(0.5);
    println!("split at 0.5: Y+ mean {:.4}, Y- mean {:.4}", above.mean(), below.mean());
    println!("(X - X')^2 / 2 has mean {:.4} (= variance)", x.pair_square_diff().mean());
    let (cond, tail) = x.conditional_above(0.5);
    println!("Pr[X > 0.5] = {tail}, conditional mean {:.4}", cond.map_or(f64::NAN, |c| c.mean()));

    let mut rng = RandomSource::new(42, 0);
    let draws: Vec<f64> = (0..8).map(|_| x.sample(&mut rng)).collect();
    println!("eight draws {draws:?}");

    for name in ["bernoulli:0.3", "uniform:1..100:100", "pareto:2.5:1:512", "hard-statebased:10:1"] {
        let d = parse_named(name)?;
        println!("{name:>22}: {} atoms, mean {:.5}, sd {:.5}", d.len(), d.mean(), d.moments().std_dev());
    }
    println!("{}", FiniteDist::new(&[0.0, 1.0], &[0.25, 0.75])?.to_json());
    Ok(())
}
