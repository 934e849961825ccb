# offload_energy/storage/reader.py
import sqlite3
from contextlib import closing

import pandas as pd


def _query(db_path: str, q: str, params=()) -> pd.DataFrame:
    with closing(sqlite3.connect(db_path)) as conn:
        return pd.read_sql_query(q, conn, params=params)


def list_runs(db_path: str):
    return _query(db_path, "SELECT run_id, created_utc, seed, n_cells, n_failed, note FROM runs ORDER BY run_id")


def get_results(db_path: str, run_id: int) -> pd.DataFrame:
    return _query(db_path, "SELECT * FROM results WHERE run_id=? ORDER BY scenario_id, platform, workload",
                  (int(run_id),))


def get_series(db_path: str, run_id: int, metric: str, scenario_id: int | None = None,
               platform: str | None = None, workload: str | None = None) -> pd.DataFrame:
    """Return DataFrame with scenario_id, platform, workload, t and value for one metric."""
    q = ("SELECT s.scenario_id, s.platform, s.workload, p.t, p.value FROM samples p "
         "JOIN series s ON s.series_id = p.series_id WHERE s.run_id=? AND s.metric=?")
    args: list = [int(run_id), metric]
    for col, v in (("scenario_id", scenario_id), ("platform", platform), ("workload", workload)):
        if v is not None:
            q += f" AND s.{col}=?"
            args.append(v)
    q += " ORDER BY s.series_id, p.t"
    df = _query(db_path, q, args)
    if df.empty:
        raise ValueError(f"no '{metric}' samples for run {run_id}")
    return df
