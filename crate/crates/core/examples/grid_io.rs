//! Reading and writing grid files, and rendering reports.

use nablafrac::frac::frac_sum_series;
use nablafrac::harness::{read_grid, render, write_grid, GridFormat, Record, ReportFormat};
use nablafrac::scalar::Rational;

fn main() -> nablafrac::error::Result<()> {
    let dir = std::env::temp_dir().join("nablafrac-grid-io");
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("f.csv");
    std::fs::write(&csv, "t,value\n0,1\n1,-1/2\n2,0.25\n3,4\n")?;

    let f = read_grid(&csv, GridFormat::Csv)?;
    let s = frac_sum_series(&f, 0, &"3/2".parse()?, 3)?;
    let json = dir.join("sum.json");
    write_grid(&s, &json, GridFormat::Json)?;
    print!("{}", std::fs::read_to_string(&json)?);

    let back = read_grid(&json, GridFormat::Json)?;
    assert_eq!(back, s);
    let rec = Record::new()
        .with("file", json.display().to_string())
        .with("points", back.len())
        .with("last", back.get(3)?.to_string())
        .with("float", nablafrac::scalar::Real::to_f64(back.get(3)? as &Rational));
    for format in [ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json] {
        print!("{}", render(&rec, format)?);
    }
    Ok(())
}
