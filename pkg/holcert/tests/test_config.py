r"""
Test file for the `config` module of the "holcert" library.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
import json
import unittest

import holcert as hc

# %% Globals
_J = [["0", "-1/1"], ["1/1", "0"]]
_E12 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
_E13 = [[0, 0, -1], [0, 0, 0], [1, 0, 0]]


# %% OracleSettings
class Test_OracleSettings(unittest.TestCase):
    r"""
    Tests the OracleSettings class with the following cases:
        defaults
        non-positive values
        too few transport steps
        negative point count
    """

    def test_defaults(self) -> None:
        settings = hc.OracleSettings()
        self.assertEqual(settings.tolerance, 1e-6)
        self.assertEqual(settings.transport_steps, 400)

    def test_positive(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.OracleSettings(step=0.0)
        with self.assertRaises(hc.InputError):
            hc.OracleSettings(tolerance=True)  # type: ignore[arg-type]

    def test_steps(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.OracleSettings(transport_steps=50)

    def test_points(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.OracleSettings(points=-1)


# %% RunConfig
class Test_RunConfig(unittest.TestCase):
    r"""
    Tests the RunConfig class with the following cases:
        default order is N+1
        configured order
        negative order
        bad permutation
        not a subalgebra
    """

    def test_order(self) -> None:
        spec = hc.get_fixture("F4").spec
        self.assertEqual(hc.RunConfig(spec=spec).order, 4)
        self.assertEqual(hc.RunConfig(spec=spec, max_order=2).order, 2)

    def test_negative(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.RunConfig(spec=hc.get_fixture("F0").spec, max_order=-1)

    def test_permutation(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.RunConfig(spec=hc.get_fixture("F4").spec, permutation=(1, 2))

    def test_not_subalgebra(self) -> None:
        spec = hc.HSpec.from_lists(3, [_E12, _E13])
        with self.assertRaises(hc.InputError) as context:
            hc.RunConfig(spec=spec)
        self.assertIn("[A_1, A_2]", str(context.exception))
        cfg = hc.RunConfig(spec=spec, require_subalgebra=False)
        self.assertEqual(cfg.spec.N, 2)


# %% parse_permutation
class Test_parse_permutation(unittest.TestCase):
    r"""
    Tests the parse_permutation function with the following cases:
        None
        reverse
        comma separated
        list
        bad values
    """

    def test_none(self) -> None:
        self.assertIsNone(hc.parse_permutation(None, 3))

    def test_reverse(self) -> None:
        self.assertEqual(hc.parse_permutation(" Reverse ", 3), (3, 2, 1))

    def test_text(self) -> None:
        self.assertEqual(hc.parse_permutation("2,3,1", 3), (2, 3, 1))

    def test_list(self) -> None:
        self.assertEqual(hc.parse_permutation([2, 1], 2), (2, 1))

    def test_bad(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.parse_permutation("2;1", 2)
        with self.assertRaises(hc.InputError):
            hc.parse_permutation([True, 1], 2)
        with self.assertRaises(hc.InputError):
            hc.parse_permutation(3, 3)


# %% config_from_dict
class Test_config_from_dict(unittest.TestCase):
    r"""
    Tests the config_from_dict function with the following cases:
        fixture
        explicit generators
        random input
        every option
        not an object
        unknown key
        no or several input sources
        bad mode
        bad generators
        bad oracle settings
        not a subalgebra
    """

    def test_fixture(self) -> None:
        cfg = hc.config_from_dict({"fixture": "f3"})
        self.assertEqual(cfg.fixture, "F3")
        self.assertEqual(cfg.spec, hc.get_fixture("F3").spec)
        self.assertIsNone(cfg.random_seed)

    def test_generators(self) -> None:
        cfg = hc.config_from_dict({"n": 2, "generators": [_J]})
        self.assertIsNone(cfg.fixture)
        self.assertEqual(cfg.spec, hc.get_fixture("F1").spec)

    def test_random(self) -> None:
        cfg = hc.config_from_dict({"random": {"n": 3, "seed": 1}})
        self.assertEqual(cfg.random_seed, 1)
        self.assertEqual(cfg.spec, hc.random_h(3, seed=1).spec)

    def test_options(self) -> None:
        data = {
            "fixture": "F4",
            "max_order": 2,
            "mode": "exhaustive",
            "checks": "metric",
            "permutation": "reverse",
            "probe_samples": 0,
            "oracle": {"points": 1, "seed": 9},
            "output": {"json": "out/report.json"},
            "debug": {"corrupt_metric": True},
        }
        cfg = hc.config_from_dict(data, base_dir=hc.get_tests_dir())
        self.assertEqual(cfg.order, 2)
        self.assertEqual(cfg.mode, hc.EnumerationMode.exhaustive)
        self.assertEqual(cfg.checks, ("metric",))
        self.assertEqual(cfg.permutation, (3, 2, 1))
        self.assertEqual(cfg.probe_samples, 0)
        self.assertEqual((cfg.oracle.points, cfg.oracle.seed), (1, 9))
        self.assertEqual(cfg.output_json, hc.get_tests_dir() / "out" / "report.json")
        self.assertIsNone(cfg.output_text)
        self.assertTrue(cfg.corrupt_metric)

    def test_not_object(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.config_from_dict([1, 2])  # type: ignore[arg-type]

    def test_unknown_key(self) -> None:
        with self.assertRaises(hc.InputError) as context:
            hc.config_from_dict({"fixture": "F0", "bogus": 1})
        self.assertIn("bogus", str(context.exception))

    def test_sources(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"fixture": "F0", "random": {"n": 2}})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"random": {"seed": 2}})

    def test_mode(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"fixture": "F0", "mode": "fast"})

    def test_bad_generators(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"generators": [_J]})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"n": 2, "generators": _J[0]})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"n": "2", "generators": [_J]})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"n": 2, "generators": [[["0", "1"], ["1", "0"]]]})

    def test_bad_oracle(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"fixture": "F0", "oracle": {"stepsize": 1e-3}})
        with self.assertRaises(hc.InputError):
            hc.config_from_dict({"fixture": "F0", "oracle": {"eps": -1.0}})

    def test_not_subalgebra(self) -> None:
        data = {"n": 3, "generators": [_E12, _E13]}
        with self.assertRaises(hc.InputError) as context:
            hc.config_from_dict(data)
        self.assertIn("[A_1, A_2]", str(context.exception))
        cfg = hc.config_from_dict(dict(data, require_subalgebra=False))
        self.assertFalse(cfg.require_subalgebra)


# %% parse_config
class Test_parse_config(unittest.TestCase):
    r"""
    Tests the parse_config function with the following cases:
        nominal with relative output paths
        missing file
        invalid JSON
    """

    def setUp(self) -> None:
        self.filename = hc.get_tests_dir() / "temp_config.json"

    def test_nominal(self) -> None:
        self.filename.write_text(json.dumps({"fixture": "F1", "output": {"text": "report.txt"}}), encoding="utf-8")
        cfg = hc.parse_config(self.filename)
        self.assertEqual(cfg.fixture, "F1")
        self.assertEqual(cfg.output_text, hc.get_tests_dir() / "report.txt")

    def test_missing(self) -> None:
        with self.assertRaises(hc.InputError) as context:
            hc.parse_config(hc.get_tests_dir() / "does_not_exist.json")
        self.assertIn("does not exist", str(context.exception))

    def test_bad_json(self) -> None:
        self.filename.write_text('{"fixture": "F1",', encoding="utf-8")
        with self.assertRaises(hc.InputError) as context:
            hc.parse_config(str(self.filename))
        self.assertIn("not valid JSON", str(context.exception))

    def tearDown(self) -> None:
        self.filename.unlink(missing_ok=True)


# %% apply_overrides
class Test_apply_overrides(unittest.TestCase):
    r"""
    Tests the apply_overrides function with the following cases:
        nothing to change
        fixture replaces the input
        seed reseeds the oracle
        seed redraws a random input
        permutation dropped with a new input
        every remaining option
        bad mode
    """

    def setUp(self) -> None:
        self.cfg = hc.config_from_dict({"fixture": "F4", "permutation": [2, 3, 1]})

    def test_keep(self) -> None:
        self.assertEqual(hc.apply_overrides(self.cfg), self.cfg)

    def test_fixture(self) -> None:
        cfg = hc.apply_overrides(self.cfg, fixture="F1")
        self.assertEqual(cfg.fixture, "F1")
        self.assertEqual(cfg.spec.N, 1)
        self.assertIsNone(cfg.permutation)

    def test_seed(self) -> None:
        cfg = hc.apply_overrides(self.cfg, seed=12)
        self.assertEqual(cfg.oracle.seed, 12)
        self.assertEqual(cfg.spec, self.cfg.spec)

    def test_random_seed(self) -> None:
        cfg = hc.config_from_dict({"random": {"n": 3, "seed": 1}})
        other = hc.apply_overrides(cfg, seed=5)
        self.assertEqual(other.random_seed, 5)
        self.assertEqual(other.spec, hc.random_h(3, seed=5).spec)
        self.assertEqual(other.oracle.seed, 5)

    def test_options(self) -> None:
        path = hc.get_tests_dir() / "report.json"
        cfg = hc.apply_overrides(
            self.cfg,
            max_order=1,
            mode="exhaustive",
            checks=["e130"],
            permutation="reverse",
            corrupt_metric=True,
            output_json=path,
        )
        self.assertEqual(cfg.order, 1)
        self.assertEqual(cfg.mode, hc.EnumerationMode.exhaustive)
        self.assertEqual(cfg.checks, ("e130",))
        self.assertEqual(cfg.permutation, (3, 2, 1))
        self.assertTrue(cfg.corrupt_metric)
        self.assertEqual(cfg.output_json, path)

    def test_bad_mode(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.apply_overrides(self.cfg, mode="fast")


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
