import pathlib
import sys

# let the tests run from a plain checkout, without an editable install
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
