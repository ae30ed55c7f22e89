//! Plain, CSV and JSON renderings of layers, grids, distributions and series.
//!
//! Integers are always written in exact decimal. JSON numbers carry the
//! full digit string, so big values survive a round trip through any parser
//! that keeps arbitrary-precision numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// One layer of a `B_p` table over the full cube `[0, n)^(p-1)`, in
/// lexicographic order, zeros included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub n: u64,
    pub cells: Vec<(Vec<u64>, BigInt)>,
}

/// All `d`-tuples over `[0, n)` in lexicographic order.
pub fn cube_indices(d: usize, n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn dense_layer(p: u32, n: u64, mut value: impl FnMut(&[u64]) -> BigInt) -> Layer {
    let cells = cube_indices((p - 1) as usize, n)
        .into_iter()
        .map(|ks| {
            let v = if ks.iter().sum::<u64>() < n {
                value(&ks)
            } else {
                BigInt::zero()
            };
            (ks, v)
        })
        .collect();
    Layer { n, cells }
}

pub fn bigint_json(v: &BigInt) -> Value {
    let n: Number = v
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    Value::Number(n)
}

/// Nests a flat lexicographic list over `[0, n)^d` into `d` levels of arrays.
fn nest(values: &[BigInt], d: usize, n: usize) -> Value {
    if d == 0 {
        return bigint_json(&values[0]);
    }
    let stride = n.pow((d - 1) as u32);
    Value::Array(
        (0..n)
            .map(|i| nest(&values[i * stride..(i + 1) * stride], d - 1, n))
            .collect(),
    )
}

fn right_aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// Human-readable table with zero entries omitted.
///
/// `p = 2` prints one triangle row per layer; `p = 3` prints each layer as
/// a triangular matrix (row `k`, column `l`); larger `p` lists `ks: value`.
pub fn layers_plain(p: u32, layers: &[Layer]) -> String {
    match p {
        2 => {
            let rows: Vec<Vec<String>> = layers
                .iter()
                .map(|layer| {
                    layer
                        .cells
                        .iter()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(_, v)| v.to_string())
                        .collect()
                })
                .collect();
            right_aligned(&rows)
        }
        3 => {
            let mut out = String::new();
            for (i, layer) in layers.iter().enumerate() {
                if layers.len() > 1 {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("n = {}\n", layer.n));
                }
                let mut rows: Vec<Vec<String>> = vec![Vec::new(); layer.n as usize];
                for (ks, v) in &layer.cells {
                    if !v.is_zero() {
                        rows[ks[0] as usize].push(v.to_string());
                    }
                }
                rows.retain(|r| !r.is_empty());
                out.push_str(&right_aligned(&rows));
            }
            out
        }
        _ => {
            let mut out = String::new();
            for layer in layers {
                for (ks, v) in &layer.cells {
                    if !v.is_zero() {
                        let ks: Vec<String> = ks.iter().map(u64::to_string).collect();
                        out.push_str(&format!("{} ({}): {}\n", layer.n, ks.join(","), v));
                    }
                }
            }
            out
        }
    }
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).map_err(|e| Error::Export(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| Error::Export(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Export(e.to_string()))
}

/// Long-format CSV: `p,n,k1,...,k{p-1},value`, one row per cube cell.
pub fn layers_csv(p: u32, layers: &[Layer]) -> Result<String> {
    csv_string(|w| {
        let mut header = vec!["p".to_string(), "n".to_string()];
        header.extend((1..p).map(|i| format!("k{i}")));
        header.push("value".into());
        w.write_record(&header)?;
        for layer in layers {
            for (ks, v) in &layer.cells {
                let mut rec = vec![p.to_string(), layer.n.to_string()];
                rec.extend(ks.iter().map(u64::to_string));
                rec.push(v.to_string());
                w.write_record(&rec)?;
            }
        }
        Ok(())
    })
}

/// `{"p": .., "source": .., "layers": [{"n": .., "values": nested}]}`, where
/// `values` nests `p - 1` levels of arrays of length `n`.
pub fn layers_json(p: u32, source: &str, layers: &[Layer]) -> String {
    let d = (p - 1) as usize;
    let layers: Vec<Value> = layers
        .iter()
        .map(|layer| {
            let flat: Vec<BigInt> = layer.cells.iter().map(|(_, v)| v.clone()).collect();
            json!({"n": layer.n, "values": nest(&flat, d, layer.n as usize)})
        })
        .collect();
    json!({"p": p, "source": source, "layers": layers}).to_string()
}

/// Plain matrix of one `B'_3` layer, every entry shown.
pub fn matrix_plain(rows: &[Vec<BigInt>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    right_aligned(&cells)
}

pub fn matrix_csv(n: u64, rows: &[Vec<BigInt>]) -> Result<String> {
    csv_string(|w| {
        w.write_record(["p", "n", "k", "l", "value"])?;
        for (k, row) in rows.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                w.write_record([
                    "3".to_string(),
                    n.to_string(),
                    k.to_string(),
                    l.to_string(),
                    v.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

pub fn matrix_json(n: u64, rows: &[Vec<BigInt>]) -> String {
    let values: Vec<Value> = rows
        .iter()
        .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
        .collect();
    json!({"p": 3, "source": "prime", "n": n, "values": values}).to_string()
}

/// `k1,...,k{p-1},count` rows in key order.
pub fn distribution_csv(p: u32, dist: &BTreeMap<Vec<u64>, BigInt>) -> Result<String> {
    csv_string(|w| {
        let mut header: Vec<String> = (1..p).map(|i| format!("k{i}")).collect();
        header.push("count".into());
        w.write_record(&header)?;
        for (ks, c) in dist {
            let mut rec: Vec<String> = ks.iter().map(u64::to_string).collect();
            rec.push(c.to_string());
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

pub fn distribution_json(p: u32, n: u64, dist: &BTreeMap<Vec<u64>, BigInt>) -> String {
    let rows: Vec<Value> = dist
        .iter()
        .map(|(ks, c)| json!({"ks": ks, "count": bigint_json(c)}))
        .collect();
    json!({"p": p, "n": n, "distribution": rows}).to_string()
}

/// `t,x,y,coefficient` rows, zeros included.
pub fn series_csv(s: &TruncatedSeries) -> Result<String> {
    csv_string(|w| {
        w.write_record(["t", "x", "y", "coefficient"])?;
        for (i, j, k, c) in s.table() {
            w.write_record([i.to_string(), j.to_string(), k.to_string(), c.to_string()])?;
        }
        Ok(())
    })
}
