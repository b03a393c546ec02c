//! Point-cloud input: CSV with one comma-separated point per line and `#`
//! comments.

use std::io::BufRead;

use crate::error::{Error, Result};

/// Reads a point cloud, checking that every point has the same dimension.
pub fn load_points_csv<R: BufRead>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let coords: Vec<f64> = content
            .split(',')
            .map(|field| {
                field.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad coordinate {:?}", field.trim()),
                })
            })
            .collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                msg: "empty point".into(),
            });
        }
        if let Some(first) = points.first() {
            if coords.len() != first.len() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!(
                        "point has {} coordinates, expected {}",
                        coords.len(),
                        first.len()
                    ),
                });
            }
        }
        points.push(coords);
    }
    Ok(points)
}

/// Writes a point cloud in the same CSV dialect.
pub fn format_points_csv(points: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for p in points {
        let fields: Vec<String> = p.iter().map(|c| format!("{c}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Narrows a point cloud to the plane, erroring on any other dimension.
pub fn to_planar(points: &[Vec<f64>]) -> Result<Vec<[f64; 2]>> {
    points
        .iter()
        .map(|p| {
            if p.len() != 2 {
                Err(Error::DimensionMismatch {
                    expected: 2,
                    got: p.len(),
                })
            } else {
                Ok([p[0], p[1]])
            }
        })
        .collect()
}
