import sys
from pathlib import Path

# the figure scripts import each other by bare name (`from _common import`),
# exactly as when run as `python3 figures/<script>.py`
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
