use super::{Regex, RESERVED};

const ALT: u8 = 0;
const CAT: u8 = 1;
const REP: u8 = 2;

/// Prints the concrete syntax; `parse(&print(r)) == r` for every valid `r`.
pub fn print(r: &Regex) -> String {
    let mut out = String::new();
    write(r, ALT, &mut out);
    out
}

fn write(r: &Regex, ctx: u8, out: &mut String) {
    match r {
        Regex::Empty => out.push('#'),
        Regex::Epsilon => out.push_str("()"),
        Regex::Char(c) => {
            if RESERVED.contains(c) || c.is_whitespace() {
                out.push('\\');
            }
            out.push(*c);
        }
        Regex::Ref(x) => {
            out.push('&');
            out.push_str(x);
        }
        Regex::Bind(x, body) => {
            out.push('{');
            out.push_str(x);
            out.push(':');
            write(body, ALT, out);
            out.push('}');
        }
        Regex::Plus(child) => {
            write_postfix_child(child, out);
            out.push('+');
        }
        Regex::Alt(..) if r.as_star().is_some() => {
            write_postfix_child(r.as_star().unwrap(), out);
            out.push('*');
        }
        Regex::Concat(a, b) => {
            let open = ctx > CAT;
            if open {
                out.push('(');
            }
            write(a, REP, out);
            let mut right = String::new();
            write(b, CAT, &mut right);
            if ends_with_reference(out) && right.starts_with(is_name_char) {
                out.push(' ');
            }
            out.push_str(&right);
            if open {
                out.push(')');
            }
        }
        Regex::Alt(a, b) => {
            let open = ctx > ALT;
            if open {
                out.push('(');
            }
            write(a, CAT, out);
            out.push('|');
            write(b, ALT, out);
            if open {
                out.push(')');
            }
        }
    }
}

fn write_postfix_child(child: &Regex, out: &mut String) {
    let bare = matches!(
        child,
        Regex::Empty
            | Regex::Epsilon
            | Regex::Char(_)
            | Regex::Ref(_)
            | Regex::Bind(..)
            | Regex::Plus(_)
    ) || child.as_star().is_some();
    if bare {
        write(child, REP, out);
    } else {
        out.push('(');
        write(child, ALT, out);
        out.push(')');
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

// Over-approximates: an escaped `\&` followed by name characters also counts.
fn ends_with_reference(s: &str) -> bool {
    let trimmed = s.trim_end_matches(is_name_char);
    trimmed.len() < s.len() && trimmed.ends_with('&')
}
