use cq_core::LaurentPoly;

/// Canonical text with `·` between factors.
pub fn dotted(p: &LaurentPoly) -> String {
    p.to_string().replace('*', "·")
}

/// Rewrites every `Y[i,n]` as `Y_{i,q^n}`.
pub fn shorthand(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(start) = rest.find("Y[") {
        out.push_str(&rest[..start]);
        let tail = &rest[start + 2..];
        let Some(end) = tail.find(']') else {
            out.push_str(&rest[start..]);
            return out;
        };
        match tail[..end].split_once(',') {
            Some((i, n)) => {
                let power = match n {
                    "0" => "1".to_string(),
                    "1" => "q".to_string(),
                    n => format!("q^{n}"),
                };
                out.push_str(&format!("Y_{{{i},{power}}}"));
            }
            None => out.push_str(&rest[start..start + 3 + end]),
        }
        rest = &tail[end + 1..];
    }
    out.push_str(rest);
    out
}

pub fn vector(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}
