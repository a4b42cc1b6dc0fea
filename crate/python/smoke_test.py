"""Smoke test for the pyripple extension module.

Build the module first, e.g. `pip install ./crates/python` (maturin), or
copy target/release/libpyripple.so next to this file as pyripple.so.
"""

import pyripple


def main():
    adder = pyripple.build("add", 6)
    counts = adder.report()
    assert (counts["toffoli"], counts["cnot"], counts["depth"]) == (11, 27, 16), counts

    text = adder.render()
    assert pyripple.Circuit.parse(text) == adder

    result = pyripple.verify(pyripple.build("add", 4), "add", 4)
    assert result["passed"] and result["inputs_checked"] == 512, result

    # a = 5, b = 3 on the n = 4 adder: b becomes 8, z stays 0
    c = pyripple.build("add", 4)
    roles = c.roles()
    state = 0
    for i in range(4):
        state |= ((5 >> i) & 1) << roles[f"a{i}"]
        state |= ((3 >> i) & 1) << roles[f"b{i}"]
    out = c.run(state)
    b = sum(((out >> roles[f"b{i}"]) & 1) << i for i in range(4))
    assert b == 8 and (out >> roles["z"]) & 1 == 0, (b, out)

    lowered, depth, cancelled = pyripple.build("add", 5).lower()
    assert depth == 28, depth
    assert lowered.report()["toffoli"] == 0

    assert c.invert().invert() == c
    assert "11 27 16" in pyripple.table(6)
    assert pyripple.lower_toffoli(0, 1, 2)[0] == "cv 1 2"

    try:
        pyripple.build("mul", 4)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown variant accepted")

    print("pyripple smoke test ok")


if __name__ == "__main__":
    main()
