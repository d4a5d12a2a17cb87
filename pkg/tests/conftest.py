import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ahpkit.fixtures import cigarette_efficiency


@pytest.fixture(scope="session")
def paper_project():
    return cigarette_efficiency()


@pytest.fixture(scope="session")
def paper_hierarchy(paper_project):
    return paper_project.build_hierarchy()


@pytest.fixture(scope="session")
def paper_result(paper_hierarchy):
    from ahpkit import evaluate

    return evaluate(paper_hierarchy)
