use std::io::{self, BufWriter, Write};

use crate::map::{parse_point, Map};
use crate::{Failure, Format, GenArgs};

pub fn run(args: &GenArgs) -> Result<u8, Failure> {
    if args.format != Format::Csv && args.map.p > 251 {
        return Err(Failure::usage(format!(
            "{:?} output stores a coordinate in one byte and needs p <= 251",
            args.format
        )));
    }
    let map = Map::from_args(&args.map, &args.budget.budget())?;
    let n = map.n();
    let mut x = match &args.seed {
        Some(s) => parse_point(map.field(), s, n)?,
        None => vec![0; n],
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut line = String::new();
    for _ in 0..args.count {
        x = map.step(&x)?;
        write_point(&mut out, &mut line, &x, args.format)?;
    }
    out.flush()?;
    Ok(0)
}

fn write_point(out: &mut impl Write, line: &mut String, x: &[u32], format: Format) -> io::Result<()> {
    use std::fmt::Write as _;
    match format {
        Format::Raw => {
            let bytes: Vec<u8> = x.iter().map(|&v| v as u8).collect();
            out.write_all(&bytes)
        }
        Format::Hex => {
            line.clear();
            for &v in x {
                let _ = write!(line, "{v:02x}");
            }
            line.push('\n');
            out.write_all(line.as_bytes())
        }
        Format::Csv => {
            line.clear();
            for (k, &v) in x.iter().enumerate() {
                if k > 0 {
                    line.push(',');
                }
                let _ = write!(line, "{v}");
            }
            line.push('\n');
            out.write_all(line.as_bytes())
        }
    }
}
