import os
from typing import Optional

from celery.utils.log import get_task_logger

from pinbrauer.core.exporter import to_json
from pinbrauer.core.suites import run_suite
from pinbrauer.worker.celery_app import celery_app

logger = get_task_logger(__name__)


@celery_app.task(name="run_verification_suite")
def run_verification_suite(suite: str, n: int, N: int, seed: int = 0, save: bool = False) -> dict:
    """
    A Celery task running one named verification suite.

    With save set, the report is also written to PINBRAUER_OUT_DIR (default 'out').
    """
    logger.info("starting suite %s at n=%d, N=%d", suite, n, N)
    try:
        report = run_suite(suite, n, N, seed).to_dict()
    except Exception as e:
        logger.error("suite %s at n=%d, N=%d failed: %s", suite, n, N, e)
        return {"error": str(e)}
    if save:
        _save(report, f"{suite}_n{n}_N{N}_seed{seed}.json")
    logger.info("suite %s finished: %d cases, passed=%s", suite, len(report["cases"]), report["passed"])
    return report


def _save(report: dict, name: str, out_dir: Optional[str] = None) -> str:
    out_dir = out_dir or os.environ.get("PINBRAUER_OUT_DIR", "out")
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(report))
    return path
