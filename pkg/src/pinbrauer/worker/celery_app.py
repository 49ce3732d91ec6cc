import os
from celery import Celery

# Redis serves as broker and result backend; override for containers
REDIS_URL = os.environ.get("REDIS_URL", "redis://localhost:6379/0")

celery_app = Celery(
    "pinbrauer_worker",
    broker=REDIS_URL,
    backend=REDIS_URL,
    include=["pinbrauer.worker.tasks"]
)

celery_app.conf.update(
    task_track_started=True,
    result_extended=True,
)
