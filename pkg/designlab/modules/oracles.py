import time

import streamlit as st

try:
    from ..domain import DesignLabError
    from ..services import count, count_table
except Exception:  # pragma: no cover
    from designlab.domain import DesignLabError  # type: ignore
    from designlab.services import count, count_table  # type: ignore


@st.cache_data(show_spinner=False)
def _table(max_q: int):
    return count_table(max_q)


def render():
    st.header("🔢 Kaba Kuvvet Sayımlar")
    st.caption("Latin kare ve ortogonal çift sayıları, iki bağımsız sayımla karşılaştırmalı")

    st.dataframe(_table(4), use_container_width=True)

    col1, col2 = st.columns(2)
    with col1:
        tur = st.selectbox("Sayım", ["latin", "latin-reduced", "mols"])
    with col2:
        q = st.number_input("Mertebe q", min_value=1, max_value=6, value=4)
    if st.button("Say", type="primary"):
        baslangic = time.perf_counter()
        try:
            deger, kontrol = count(tur, int(q))
        except DesignLabError as exc:
            st.warning(f"⚠️ {exc}")
            return
        st.metric("Sonuç", f"{deger:,}", help=f"{time.perf_counter() - baslangic:.2f} sn")
        if deger == kontrol:
            st.success("✅ Bağımsız sayım aynı sonucu veriyor")
        else:
            st.error(f"🚨 Bağımsız sayım farklı: {kontrol:,}")
