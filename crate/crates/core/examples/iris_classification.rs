//! Monte-Carlo accuracy of the four fusion methods on the bundled Iris table.
//!
//! ```text
//! cargo run --release --example iris_classification [runs] [seed]
//! ```

use std::path::Path;

use qdst::tabular::{monte_carlo_eval, Dataset, Method, SplitSize};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let runs: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);

    let data = Dataset::from_csv(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/iris.csv"))?;
    println!("{} rows, {} attributes, classes {:?}", data.len(), data.attributes.len(), data.classes);

    let sizes: Vec<SplitSize> = [0.2, 0.4, 0.6, 0.8].into_iter().map(SplitSize::Fraction).collect();
    let table = monte_carlo_eval(&data, &sizes, runs, &Method::ALL, seed)?;

    print!("{:>9}", "fraction");
    for m in Method::ALL {
        print!("{:>13}", m.name());
    }
    println!();
    for s in &sizes {
        print!("{:>9.1}", s.label());
        for m in Method::ALL {
            print!("{:>13.4}", table.get(m, s.label()).unwrap_or(f64::NAN));
        }
        println!();
    }
    Ok(())
}
