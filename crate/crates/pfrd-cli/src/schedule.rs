//! The schedule mini-language:
//!   recip:KSTART:KEND:STEP[,1]  caps 1/k for k = KSTART, KSTART-STEP, ...
//!                               down to KEND, optionally followed by 1
//!   list:V1,V2,...              explicit increasing cap values

use pfrd::PathSchedule;

pub fn parse_schedule(spec: &str) -> Result<PathSchedule, String> {
    if let Some(rest) = spec.strip_prefix("recip:") {
        let fields: Vec<&str> = rest.split(':').collect();
        if fields.len() != 3 {
            return Err(format!(
                "schedule '{spec}': expected recip:KSTART:KEND:STEP[,1]"
            ));
        }
        let k_start = parse_count(fields[0], spec)?;
        let k_end = parse_count(fields[1], spec)?;
        let (step_text, append_one) = match fields[2].split_once(',') {
            Some((step, "1")) => (step, true),
            Some((_, tail)) => {
                return Err(format!(
                    "schedule '{spec}': trailing entry '{tail}' (only ',1' is allowed)"
                ));
            }
            None => (fields[2], false),
        };
        let step = parse_count(step_text, spec)?;
        PathSchedule::reciprocal(k_start, k_end, step, append_one)
            .map_err(|e| format!("schedule '{spec}': {e}"))
    } else if let Some(rest) = spec.strip_prefix("list:") {
        let mut values = Vec::new();
        for field in rest.split(',') {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| format!("schedule '{spec}': invalid entry '{field}'"))?;
            values.push(v);
        }
        PathSchedule::explicit(values).map_err(|e| format!("schedule '{spec}': {e}"))
    } else {
        Err(format!(
            "schedule '{spec}': expected 'recip:...' or 'list:...'"
        ))
    }
}

fn parse_count(text: &str, spec: &str) -> Result<usize, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("schedule '{spec}': invalid field '{text}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reciprocal_with_append() {
        let s = parse_schedule("recip:990:10:10,1").unwrap();
        assert_eq!(s.len(), 100);
        assert_eq!(*s.epsilons().last().unwrap(), 1.0);
    }

    #[test]
    fn parses_explicit_list() {
        let s = parse_schedule("list:0.25,0.5,1").unwrap();
        assert_eq!(s.epsilons(), &[0.25, 0.5, 1.0]);
    }

    #[test]
    fn rejects_bad_entries_by_name() {
        let err = parse_schedule("list:0.5,abc").unwrap_err();
        assert!(err.contains("'abc'"), "{err}");
        let err = parse_schedule("recip:990:xyz:10").unwrap_err();
        assert!(err.contains("'xyz'"), "{err}");
        let err = parse_schedule("recip:990:10:10,2").unwrap_err();
        assert!(err.contains("'2'"), "{err}");
        assert!(parse_schedule("warp:1:2:3").is_err());
    }
}
