# offload_energy/storage/writer.py
import logging
import sqlite3
import time
from contextlib import closing
from pathlib import Path
from typing import Iterable, Sequence

from ..report.rows import ReportRow
from ..simulate.engine import ScenarioResult

logger = logging.getLogger(__name__)


class RunArchive:
    """SQLite archive of simulation runs: result rows plus the sampled traces."""

    def __init__(self, db_path: str | Path = "offload_energy.db", schema_path: str | Path | None = None):
        self.db_path = Path(db_path)
        self.schema_path = Path(schema_path) if schema_path else Path(__file__).with_name("schema.sql")
        self._ensure_schema()

    def _connect(self):
        # closing() releases the handle; the inner ``with conn`` commits or rolls back
        return closing(sqlite3.connect(self.db_path))

    # --- setup ----------------------------------------------------------
    def _ensure_schema(self):
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.schema_path, "r", encoding="utf-8") as f:
            sql = f.read()
        with self._connect() as conn, conn:
            conn.executescript(sql)

    # --- runs -----------------------------------------------------------
    def new_run(self, seed: int, plan_yaml: str | None = None, note: str | None = None) -> int:
        with self._connect() as conn, conn:
            cur = conn.execute("INSERT INTO runs(created_utc, seed, plan_yaml, note) VALUES (?,?,?,?)",
                               (time.time(), int(seed), plan_yaml, note))
            return cur.lastrowid

    def write_rows(self, run_id: int, rows: Sequence[ReportRow], n_failed: int = 0):
        with self._connect() as conn, conn:
            conn.executemany(
                "INSERT INTO results(run_id, scenario_id, client, server, platform, workload, total_time_s, "
                "total_client_energy_j, savings_vs_baseline_pct, source) VALUES (?,?,?,?,?,?,?,?,?,?)",
                [(run_id, r.scenario_id, r.client, r.server, r.platform, r.workload, r.total_time,
                  r.total_client_energy, r.savings_vs_baseline, r.source) for r in rows])
            conn.execute("UPDATE runs SET n_cells=?, n_failed=? WHERE run_id=?", (len(rows), int(n_failed), run_id))

    def write_traces(self, run_id: int, results: Iterable[ScenarioResult]) -> int:
        """Store every series of every result; returns the number of samples written."""
        n = 0
        with self._connect() as conn, conn:
            cur = conn.cursor()
            for res in results:
                for metric, s in res.traces.items():
                    cur.execute("INSERT INTO series(run_id, scenario_id, platform, workload, metric, source) "
                                "VALUES (?,?,?,?,?,?)",
                                (run_id, res.scenario.id, res.platform, res.workload, metric, s.source))
                    sid = cur.lastrowid
                    batch = [(sid, float(t), float(v)) for t, v in zip(s.t, s.values)]
                    cur.executemany("INSERT INTO samples(series_id, t, value) VALUES (?,?,?)", batch)
                    n += len(batch)
        logger.info("archived %d samples for run %d", n, run_id)
        return n

    def archive(self, results: Sequence[ScenarioResult], rows: Sequence[ReportRow], seed: int,
                plan_yaml: str | None = None, n_failed: int = 0, note: str | None = None) -> int:
        """One run in one call: run record, rows and traces."""
        run_id = self.new_run(seed, plan_yaml, note)
        self.write_rows(run_id, rows, n_failed)
        self.write_traces(run_id, results)
        return run_id
