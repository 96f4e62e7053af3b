//! The arithmetic demo repository used across the integration suites: a
//! README documenting four functions, a pull request that deletes two of
//! them, and a follow-up commit that fixes the documentation.

use crate::FixtureRepo;

pub const README_V1: &str = "\
# Arithmetic

`arithmetic.py` defines the mathematical functions used by `main.py`.

## Functions

- `add(x, y)`: returns the sum of x and y
- `subtract(x, y)`: returns the difference of x and y
- `multiply(x, y)`: returns the product of x and y
- `divide(x, y)`: returns the quotient of x and y
";

/// Documents the new function; the deleted ones are listed as deprecated in
/// prose, without call syntax, so they are no longer extracted.
pub const README_V2: &str = "\
# Arithmetic

`arithmetic.py` defines the mathematical functions used by `main.py`.

## Functions

- `add(x, y)`: returns the sum of x and y
- `multiply(x, y)`: returns the product of x and y
- `power(x, n)`: returns x raised to the power of n

## Deprecated

The subtract and divide functions were removed.
";

pub const ARITHMETIC_V1: &str = "\
def add(x, y):
    return x + y

def subtract(x, y):
    return x - y

def multiply(x, y):
    return x * y

def divide(x, y):
    return x / y
";

pub const ARITHMETIC_V2: &str = "\
def add(x, y):
    return x + y

def multiply(x, y):
    return x * y

def power(x, n):
    return x ** n
";

pub const MAIN_V1: &str = "\
import arithmetic

print(arithmetic.add(1, 2))
print(arithmetic.subtract(5, 3))
print(arithmetic.multiply(2, arithmetic.multiply(3, 4)))
print(arithmetic.divide(10, 2))
";

pub const MAIN_V2: &str = "\
import arithmetic

print(arithmetic.add(1, 2))
print(arithmetic.multiply(2, 3))
print(arithmetic.power(3, 4))
";

pub const T_INITIAL: i64 = 1_700_000_000;
pub const T_PR: i64 = 1_700_100_000;
pub const T_DOC_FIX: i64 = 1_700_200_000;

pub struct DemoRepo {
    pub repo: FixtureRepo,
    /// Initial import: README v1 + sources v1.
    pub initial: String,
    /// The pull-request head: subtract/divide removed, power added, README
    /// untouched.
    pub pr_head: String,
    /// Follow-up: README v2 committed.
    pub doc_fixed: String,
}

/// Build all three revisions of the demo repository.
pub fn demo_repo() -> DemoRepo {
    let mut repo = FixtureRepo::new();
    let initial = repo.commit(
        "Add arithmetic functions and documentation",
        T_INITIAL,
        &[
            ("README.md", README_V1),
            ("arithmetic.py", ARITHMETIC_V1),
            ("main.py", MAIN_V1),
        ],
    );
    let pr_head = repo.commit(
        "Replace subtract and divide with power",
        T_PR,
        &[("arithmetic.py", ARITHMETIC_V2), ("main.py", MAIN_V2)],
    );
    let doc_fixed = repo.commit("Update README for power", T_DOC_FIX, &[("README.md", README_V2)]);
    DemoRepo {
        repo,
        initial,
        pr_head,
        doc_fixed,
    }
}
