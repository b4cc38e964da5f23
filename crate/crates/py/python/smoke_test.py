"""Quick end-to-end check of the extension module."""

import json

import nakajima


def main():
    m = nakajima.ParamMatrix([[2], [2, 1]])
    assert m.d == 3
    assert m.is_admissible()
    assert m.equations() == ["z1^2 - z2*z4", "z1^2*z2 - z3*z5"]
    assert len(m.hilbert_basis()) == 5
    assert len(m.vertices()) == 4

    solid = nakajima.ParamMatrix.example("fig3")
    assert solid.equations(minimal=True) == ["z2*z5 - z3*z6", "z5*z6 - z4*z7"]
    doc = json.loads(solid.equations_json(minimal=True))
    assert doc["minimal"]["eliminated"] == {"z1": ["z2", "z5"]}

    report = json.loads(solid.verify(level="exhaustive", seed=1))
    assert all(c["pass"] for c in report["checks"]), report

    big = nakajima.ParamMatrix([[10**30]])
    assert big.equations() == [f"z1^{10**30} - z2*z3"]
    assert nakajima.ParamMatrix.from_json(big.to_json()) == big

    bad = nakajima.ParamMatrix([[1], [0, -1]])
    assert bad.admissibility_witness() == {"level": 3, "epsilon": [1, 1], "pairing": -1}
    try:
        bad.equations()
    except ValueError as e:
        assert "inadmissible" in str(e)
    else:
        raise AssertionError("inadmissible input accepted")

    try:
        nakajima.ParamMatrix([[1], [0]])
    except ValueError:
        pass
    else:
        raise AssertionError("zero row accepted")

    print("smoke test passed:", m, solid)


if __name__ == "__main__":
    main()
