//! Threshold grids given in decibels.

/// Parses `min:step:max`, a comma list, or a single value (all in dB).
pub fn parse_db_grid(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' must look like min:step:max"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad grid number '{p}': {e}"));
        let (lo, step, hi) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if step.is_nan() || step <= 0.0 || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("grid '{s}' needs a positive step and finite ends"));
        }
        if hi < lo {
            return Err(format!("grid '{s}' has max below min"));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        if n > 1_000_000 {
            return Err(format!("grid '{s}' has too many points"));
        }
        return Ok((0..=n).map(|i| round12(lo + i as f64 * step)).collect());
    }
    let mut out = Vec::new();
    for p in s.split(',') {
        out.push(p.trim().parse::<f64>().map_err(|e| format!("bad grid number '{p}': {e}"))?);
    }
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("grid '{s}' must be strictly ascending"));
    }
    Ok(out)
}

// keeps 0.1-steps from printing as -9.899999999999999
fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Parses counts written as integers or in float notation (`1e6`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if f >= 1.0 && f.fract() == 0.0 && f <= 1e15 {
        Ok(f as u64)
    } else {
        Err(format!("'{s}' is not a positive whole number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grid() {
        let g = parse_db_grid("-10:0.5:30").unwrap();
        assert_eq!(g.len(), 81);
        assert_eq!(g[0], -10.0);
        assert_eq!(g[80], 30.0);
        assert_eq!(g[1], -9.5);
        assert_eq!(parse_db_grid("-10:0.1:-9").unwrap()[1], -9.9);
    }

    #[test]
    fn list_and_single() {
        assert_eq!(parse_db_grid("0").unwrap(), vec![0.0]);
        assert_eq!(parse_db_grid("-3, 0,3").unwrap(), vec![-3.0, 0.0, 3.0]);
        assert!(parse_db_grid("3,0").is_err());
        assert!(parse_db_grid("0:0:3").is_err());
        assert!(parse_db_grid("3:1:0").is_err());
        assert!(parse_db_grid("a:1:3").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("250").unwrap(), 250);
        assert!(parse_count("0.5").is_err());
        assert!(parse_count("x").is_err());
    }
}
