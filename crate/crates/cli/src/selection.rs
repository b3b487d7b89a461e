use std::path::PathBuf;

use vortrans::transitions::{selection_table, SelectionRuleRow};

use crate::failure::Failure;
use crate::output::write_csv;

#[derive(clap::Args)]
pub struct Args {
    /// Winding number of the beam.
    #[arg(long, allow_negative_numbers = true)]
    pub l: i32,
    /// Highest multipole order: 1 (dipole) or 2 (quadrupole).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub order: u32,
    /// Also write the table as CSV to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub const HEADER: [&str; 11] = [
    "order", "p", "l_prime", "sgn_l", "delta_l", "dm_sigma_-1", "dm_sigma_0", "dm_sigma_+1",
    "delta_M_rule", "delta_M", "transfer",
];

fn signed(v: i32) -> String {
    if v > 0 {
        format!("+{v}")
    } else {
        v.to_string()
    }
}

pub fn fields(row: &SelectionRuleRow) -> Vec<String> {
    vec![
        row.multipole_order().to_string(),
        row.p.to_string(),
        row.l_prime.to_string(),
        row.sign_l.map(signed).unwrap_or_default(),
        row.delta_l.iter().map(|d| signed(*d)).collect::<Vec<_>>().join(" "),
        signed(row.delta_m[0]),
        signed(row.delta_m[1]),
        signed(row.delta_m[2]),
        row.delta_cm_rule.clone(),
        signed(row.delta_cm_m),
        if row.l_prime == 0 { "cm" } else { "cm+electronic" }.to_string(),
    ]
}

pub fn run(args: &Args) -> Result<(), Failure> {
    let rows: Vec<Vec<String>> = selection_table(args.l, args.order).iter().map(fields).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([HEADER[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    println!("{}", line(HEADER.to_vec()));
    for r in &rows {
        println!("{}", line(r.iter().map(String::as_str).collect()));
    }
    if let Some(path) = &args.csv {
        write_csv(Some(path), &HEADER, &rows)?;
    }
    Ok(())
}
