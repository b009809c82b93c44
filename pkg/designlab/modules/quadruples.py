import plotly.express as px
import streamlit as st

try:
    from ..domain import DesignLabError
    from ..services import build_sqs_8n2, doubling_chain
    from ..sqs import expected_family_sizes, search_sqs, sqs_block_count
    from ..utils import DATA_DIR
except Exception:  # pragma: no cover
    from designlab.domain import DesignLabError  # type: ignore
    from designlab.services import build_sqs_8n2, doubling_chain  # type: ignore
    from designlab.sqs import expected_family_sizes, search_sqs, sqs_block_count  # type: ignore
    from designlab.utils import DATA_DIR  # type: ignore


@st.cache_resource(show_spinner="SQS(8n+2) kuruluyor...")
def _build(n: int, mode: str, seed: int):
    return build_sqs_8n2(n, mode, DATA_DIR, seed)


def render():
    st.header("🔷 Steiner Dörtlü Sistemleri")
    st.caption("Boolean SQS, ikiye katlama, arama ve SQS(8n+2) birleştirici")

    sekme1, sekme2, sekme3 = st.tabs(["İkiye katlama", "Arama", "SQS(8n+2)"])

    with sekme1:
        v = st.selectbox("Mertebe v", [8, 16, 32], index=1)
        if st.button("Kur", key="double"):
            sqs = doubling_chain(int(v))
            st.success(f"✅ SQS({v}) doğrulandı: {len(sqs)} blok (beklenen {sqs_block_count(int(v))})")

    with sekme2:
        col1, col2, col3 = st.columns(3)
        with col1:
            v = st.selectbox("Mertebe", [8, 10, 14, 16, 20, 22], index=1)
        with col2:
            yontem = st.selectbox("Yöntem", ["backtrack", "hillclimb"])
        with col3:
            seed = st.number_input("Tohum", min_value=0, value=0, key="search_seed")
        if st.button("Ara", key="search"):
            sonuc = search_sqs(int(v), int(seed), 200_000, yontem)
            if sonuc.found:
                st.success(f"✅ SQS({v}) bulundu: {sonuc.steps} adım")
            else:
                st.warning(f"⚠️ Bütçe doldu: {sonuc.blocks_placed}/{sqs_block_count(int(v))} blok")

    with sekme3:
        col1, col2 = st.columns(2)
        with col1:
            n = st.selectbox("n", [8, 16], index=1)
        with col2:
            mod = st.radio("Mod", ["partial", "full"], horizontal=True)
        if st.button("Birleştir", type="primary"):
            try:
                sonuc = _build(int(n), mod, 0)
            except DesignLabError as exc:
                st.error(f"🚨 {exc}")
                return
            tablo = sonuc.to_frame()
            tablo["beklenen"] = [expected_family_sizes(int(n))[f] for f in tablo["family"]]
            st.plotly_chart(px.bar(tablo, x="family", y="blocks", text="blocks", title=f"SQS({8 * int(n) + 2}) aileleri"),
                            use_container_width=True)
            if sonuc.report.ok:
                st.success("✅ Kapsama doğrulandı")
            else:
                st.error(f"🚨 {len(sonuc.report.violations)} ihlal")
            st.dataframe(tablo, use_container_width=True)
            st.dataframe(sonuc.report.to_frame(), use_container_width=True)
