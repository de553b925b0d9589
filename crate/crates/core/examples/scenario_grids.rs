//! Print summaries of the four parameter sweeps; pass a directory to also
//! write each grid as CSV.

use qdst::scenarios::{nested_focal_sweep, psi_phase_sweep, sweep_table, Branch, NESTED_Y};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1);

    let grid = psi_phase_sweep(11)?;
    for branch in [Branch::Disjoint, Branch::Overlapping] {
        let best = grid.iter().filter(|p| p.branch == branch).max_by(|a, b| a.qcc.total_cmp(&b.qcc)).unwrap();
        println!("second focal set {:>5}: max QCC {:.6} at psi {:.1}, theta {:.3}", branch.label(), best.qcc, best.psi, best.theta);
    }

    println!("\nQCI against nested focal sets");
    print!("{:>6}", "omega");
    for y in NESTED_Y {
        print!("{:>10}", format!("y={y}"));
    }
    println!();
    for (i, row) in nested_focal_sweep()?.iter().enumerate() {
        print!("{:>6}", i + 1);
        for v in row {
            print!("{v:>10.4}");
        }
        println!();
    }

    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        for which in 1..=4 {
            let path = std::path::Path::new(&dir).join(format!("sweep_{which}.csv"));
            sweep_table(which, 21)?.write(&path)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
